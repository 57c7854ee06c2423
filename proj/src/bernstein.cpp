#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambdavar/error.hpp"
#include "lambdavar/functions.hpp"

namespace lambdavar {

namespace {

// In-place de Casteljau; returns the value and leaves the scratch array
// holding the triangle's last level.
double de_casteljau(std::vector<double>& work, double t) {
  const double s = 1.0 - t;
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t i = 0; i < level; ++i) work[i] = s * work[i] + t * work[i + 1];
  }
  return work[0];
}

void split_coeffs(const std::vector<double>& c, double t, std::vector<double>& left,
                  std::vector<double>& right) {
  const std::size_t n = c.size() - 1;
  std::vector<double> work = c;
  left.assign(n + 1, 0.0);
  right.assign(n + 1, 0.0);
  const double s = 1.0 - t;
  left[0] = work[0];
  right[n] = work[n];
  for (std::size_t level = 1; level <= n; ++level) {
    for (std::size_t i = 0; i + level <= n; ++i) work[i] = s * work[i] + t * work[i + 1];
    left[level] = work[0];
    right[n - level] = work[n - level];
  }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// +1 / -1 when every coefficient has that strict sign, 0 otherwise.
int certified_sign(const std::vector<double>& c) {
  const int s = sign_of(c.front());
  if (s == 0) return 0;
  for (double v : c) {
    if (sign_of(v) != s) return 0;
  }
  return s;
}

struct Panel {
  double lo;
  double hi;
  int sign;  // 0 = unresolved
};

constexpr unsigned kMaxSubdivisionDepth = 64;

void subdivide(const std::vector<double>& c, double lo, double hi, unsigned depth, double tol,
               std::vector<Panel>& out) {
  if (const int s = certified_sign(c); s != 0) {
    out.push_back({lo, hi, s});
    return;
  }
  if (hi - lo <= tol) {
    out.push_back({lo, hi, 0});
    return;
  }
  if (depth >= kMaxSubdivisionDepth) {
    std::ostringstream os;
    os.precision(17);
    os << "root isolation exceeded subdivision depth " << kMaxSubdivisionDepth
       << " on unresolved panel [" << lo << ", " << hi << "]";
    throw ResourceError(os.str());
  }
  std::vector<double> left, right;
  split_coeffs(c, 0.5, left, right);
  const double mid = 0.5 * (lo + hi);
  subdivide(left, lo, mid, depth + 1, tol, out);
  subdivide(right, mid, hi, depth + 1, tol, out);
}

}  // namespace

BernsteinPoly::BernsteinPoly(std::vector<double> coeffs, double lo, double hi)
    : coeffs_(std::move(coeffs)), lo_(lo), hi_(hi) {
  if (coeffs_.empty()) throw InvalidInput("coeffs: a Bernstein polynomial needs at least one coefficient");
  if (!(lo_ >= 0.0 && hi_ <= 1.0 && lo_ < hi_)) {
    throw InvalidInput("domain: Bernstein polynomial interval must satisfy 0 <= lo < hi <= 1");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(coeffs_[i])) {
      throw InvalidInput("coeffs[" + std::to_string(i) + "]: must be finite");
    }
  }
}

double BernsteinPoly::eval_local(double t) const {
  std::vector<double> work = coeffs_;
  return de_casteljau(work, t);
}

double BernsteinPoly::operator()(double x) const {
  if (!(x >= lo_ && x <= hi_)) {
    std::ostringstream os;
    os.precision(17);
    os << "x = " << x << " outside polynomial domain [" << lo_ << ", " << hi_ << "]";
    throw DomainError(os.str());
  }
  if (x == lo_) return coeffs_.front();
  if (x == hi_) return coeffs_.back();
  return eval_local((x - lo_) / (hi_ - lo_));
}

BernsteinPoly BernsteinPoly::derivative() const {
  const std::size_t n = degree();
  if (n == 0) return BernsteinPoly({0.0}, lo_, hi_);
  const double scale = static_cast<double>(n) / (hi_ - lo_);
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = scale * (coeffs_[k + 1] - coeffs_[k]);
  return BernsteinPoly(std::move(d), lo_, hi_);
}

BernsteinPoly BernsteinPoly::elevate(std::size_t r) const {
  std::vector<double> c = coeffs_;
  for (std::size_t step = 0; step < r; ++step) {
    const std::size_t n = c.size() - 1;
    const double m = static_cast<double>(n + 1);
    std::vector<double> e(n + 2);
    e[0] = c[0];
    e[n + 1] = c[n];
    for (std::size_t k = 1; k <= n; ++k) {
      const double a = static_cast<double>(k) / m;
      e[k] = a * c[k - 1] + (1.0 - a) * c[k];
    }
    c = std::move(e);
  }
  return BernsteinPoly(std::move(c), lo_, hi_);
}

std::pair<BernsteinPoly, BernsteinPoly> BernsteinPoly::split(double t) const {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("split parameter must lie in (0, 1)");
  std::vector<double> left, right;
  split_coeffs(coeffs_, t, left, right);
  const double x = lo_ + t * (hi_ - lo_);
  return {BernsteinPoly(std::move(left), lo_, x), BernsteinPoly(std::move(right), x, hi_)};
}

BernsteinPoly BernsteinPoly::restrict_to(double a, double b) const {
  if (!(a >= lo_ && b <= hi_ && a < b)) {
    throw DomainError("restriction interval must be a nonempty subinterval of the domain");
  }
  std::vector<double> c = coeffs_;
  const double w = hi_ - lo_;
  const double tb = (b - lo_) / w;
  if (tb < 1.0) {
    std::vector<double> left, right;
    split_coeffs(c, tb, left, right);
    c = std::move(left);
  }
  const double span_b = b - lo_;
  const double ta = (a - lo_) / span_b;
  if (ta > 0.0) {
    std::vector<double> left, right;
    split_coeffs(c, ta, left, right);
    c = std::move(right);
  }
  return BernsteinPoly(std::move(c), a, b);
}

CriticalSet isolate_extrema(const BernsteinPoly& p, double tol) {
  if (!(tol > 0.0)) throw DomainError("root isolation tolerance must be positive");
  CriticalSet out;
  out.add(p.lo(), PointTag::Endpoint);
  out.add(p.hi(), PointTag::Endpoint);
  if (p.degree() < 2) return out;

  const BernsteinPoly d = p.derivative();
  const auto& dc = d.coeffs();
  if (std::all_of(dc.begin(), dc.end(), [](double v) { return v == 0.0; })) return out;

  const double width = p.hi() - p.lo();
  std::vector<Panel> panels;
  subdivide(dc, 0.0, 1.0, 0, tol / width, panels);

  // Consecutive unresolved panels form one cluster; it is an extremum iff the
  // certified signs on its two sides differ.
  std::size_t i = 0;
  while (i < panels.size()) {
    if (panels[i].sign != 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < panels.size() && panels[j + 1].sign == 0) ++j;
    const int left = i > 0 ? panels[i - 1].sign : 0;
    const int right = j + 1 < panels.size() ? panels[j + 1].sign : 0;
    if (left != 0 && right != 0 && left != right) {
      double a = panels[i].lo;
      double b = panels[j].hi;
      // Bisection on the evaluated derivative sign within the cluster.
      for (int it = 0; it < 200 && b - a > 0.0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const int s = sign_of(d.eval_local(m));
        if (s == 0) {
          a = b = m;
          break;
        }
        if (s == left) a = m; else b = m;
      }
      const double t = 0.5 * (a + b);
      out.add(p.lo() + t * width, PointTag::Root);
    }
    i = j + 1;
  }
  out.normalize();
  return out;
}

}  // namespace lambdavar
