#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambdavar/error.hpp"
#include "lambdavar/functions.hpp"

namespace lambdavar {

namespace {

constexpr double kMergeTolerance = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("x = " + fmt(x) + " outside [0, 1]");
}

int slope_class(double s) { return (s > 0.0) - (s < 0.0); }

}  // namespace

// ---------------------------------------------------------------- PiecewiseLinear

PiecewiseLinear::PiecewiseLinear(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InvalidInput("points: need at least 2 breakpoints");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidInput("points[" + std::to_string(i) + "]: coordinates must be finite");
    }
    if (i > 0 && !(p.x > points_[i - 1].x)) {
      throw InvalidInput("points[" + std::to_string(i) + "]: x must be strictly increasing");
    }
  }
  if (points_.front().x != 0.0) throw InvalidInput("points[0]: first x must be 0");
  if (points_.back().x != 1.0) {
    throw InvalidInput("points[" + std::to_string(points_.size() - 1) + "]: last x must be 1");
  }
}

PiecewiseLinear PiecewiseLinear::identity() { return PiecewiseLinear({{0.0, 0.0}, {1.0, 1.0}}); }

PiecewiseLinear PiecewiseLinear::hat() {
  return PiecewiseLinear({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}});
}

PiecewiseLinear PiecewiseLinear::abs_mid() {
  return PiecewiseLinear({{0.0, 0.5}, {0.5, 0.0}, {1.0, 0.5}});
}

PiecewiseLinear PiecewiseLinear::counterexample() {
  return PiecewiseLinear({{0.0, 0.0}, {1.0 / 3.0, 0.5}, {2.0 / 3.0, 0.5}, {1.0, 1.0}});
}

PiecewiseLinear PiecewiseLinear::linear(double slope, double intercept) {
  return PiecewiseLinear({{0.0, intercept}, {1.0, intercept + slope}});
}

double PiecewiseLinear::operator()(double x) const {
  require_unit(x);
  if (x == 1.0) return points_.back().y;
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const Point& p) { return v < p.x; });
  const Point& a = *(it - 1);
  const Point& b = *it;
  if (x == a.x) return a.y;
  return a.y + (b.y - a.y) * ((x - a.x) / (b.x - a.x));
}

double PiecewiseLinear::slope(std::size_t segment) const {
  const Point& a = points_.at(segment);
  const Point& b = points_.at(segment + 1);
  return (b.y - a.y) / (b.x - a.x);
}

double PiecewiseLinear::lipschitz_constant() const {
  double L = 0.0;
  for (std::size_t i = 0; i < segment_count(); ++i) L = std::max(L, std::abs(slope(i)));
  return L;
}

// ---------------------------------------------------------------- StepFunction

StepFunction::StepFunction(std::vector<double> cuts, std::vector<double> pieces,
                           std::vector<double> point_values)
    : cuts_(std::move(cuts)), pieces_(std::move(pieces)), point_values_(std::move(point_values)) {
  if (pieces_.size() != cuts_.size() + 1) {
    throw InvalidInput("pieces: need exactly one piece value more than cuts");
  }
  if (point_values_.size() != cuts_.size()) {
    throw InvalidInput("pointValues: need exactly one point value per cut");
  }
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (!(cuts_[i] > 0.0 && cuts_[i] < 1.0)) {
      throw InvalidInput("cuts[" + std::to_string(i) + "]: must lie in (0, 1)");
    }
    if (i > 0 && !(cuts_[i] > cuts_[i - 1])) {
      throw InvalidInput("cuts[" + std::to_string(i) + "]: must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!std::isfinite(pieces_[i])) {
      throw InvalidInput("pieces[" + std::to_string(i) + "]: must be finite");
    }
  }
  for (std::size_t i = 0; i < point_values_.size(); ++i) {
    const double v = point_values_[i];
    const double lo = std::min(pieces_[i], pieces_[i + 1]);
    const double hi = std::max(pieces_[i], pieces_[i + 1]);
    if (!(v >= lo && v <= hi)) {
      throw InvalidInput("pointValues[" + std::to_string(i) +
                         "]: must lie between the adjacent piece values");
    }
  }
}

double StepFunction::operator()(double x) const {
  require_unit(x);
  auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
  const auto idx = static_cast<std::size_t>(it - cuts_.begin());
  if (it != cuts_.end() && *it == x) return point_values_[idx];
  return pieces_[idx];
}

std::pair<double, double> StepFunction::piece_bounds(std::size_t i) const {
  const double lo = i == 0 ? 0.0 : cuts_.at(i - 1);
  const double hi = i == cuts_.size() ? 1.0 : cuts_.at(i);
  return {lo, hi};
}

// ---------------------------------------------------------------- PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(std::vector<BernsteinPoly> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidInput("pieces: need at least one piece");
  if (pieces_.front().lo() != 0.0 || pieces_.back().hi() != 1.0) {
    throw InvalidInput("pieces: intervals must cover [0, 1]");
  }
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const auto& a = pieces_[i - 1];
    const auto& b = pieces_[i];
    if (a.hi() != b.lo()) {
      throw InvalidInput("pieces[" + std::to_string(i) + "]: intervals must share endpoints");
    }
    if (std::abs(a.coeffs().back() - b.coeffs().front()) > 1e-12) {
      throw InvalidInput("pieces[" + std::to_string(i) + "]: pieces disagree at shared endpoint");
    }
  }
}

double PiecewisePolynomial::operator()(double x) const {
  require_unit(x);
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const BernsteinPoly& p, double v) { return p.hi() < v; });
  if (it == pieces_.end()) --it;
  return (*it)(x);
}

double eval(const Function& f, double x) {
  return std::visit([x](const auto& g) { return g(x); }, f);
}

// ---------------------------------------------------------------- CriticalSet

void CriticalSet::add(double x, PointTag tag) {
  points.push_back(x);
  tags.push_back(tag);
}

void CriticalSet::normalize() {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  std::vector<double> p;
  std::vector<PointTag> t;
  for (std::size_t idx : order) {
    if (!p.empty() && points[idx] - p.back() <= kMergeTolerance) {
      if (tags[idx] == PointTag::Endpoint) {
        p.back() = points[idx];
        t.back() = PointTag::Endpoint;
      }
      continue;
    }
    p.push_back(points[idx]);
    t.push_back(tags[idx]);
  }
  points = std::move(p);
  tags = std::move(t);
}

CriticalSet critical_points(const PiecewiseLinear& f) {
  CriticalSet out;
  const auto& pts = f.points();
  out.add(0.0, PointTag::Endpoint);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (slope_class(f.slope(i - 1)) != slope_class(f.slope(i))) {
      out.add(pts[i].x, PointTag::Breakpoint);
    }
  }
  out.add(1.0, PointTag::Endpoint);
  out.normalize();
  return out;
}

CriticalSet critical_points(const StepFunction& f) {
  CriticalSet out;
  out.add(0.0, PointTag::Endpoint);
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const auto [lo, hi] = f.piece_bounds(i);
    out.add(0.5 * (lo + hi), PointTag::Representative);
    if (i < f.cuts().size()) out.add(f.cuts()[i], PointTag::Breakpoint);
  }
  out.add(1.0, PointTag::Endpoint);
  out.normalize();
  return out;
}

CriticalSet critical_points(const BernsteinPoly& p) { return isolate_extrema(p); }

CriticalSet critical_points(const PiecewisePolynomial& p) {
  CriticalSet out;
  out.add(0.0, PointTag::Endpoint);
  out.add(1.0, PointTag::Endpoint);
  for (const auto& piece : p.pieces()) {
    const CriticalSet local = isolate_extrema(piece);
    for (std::size_t i = 0; i < local.size(); ++i) {
      const bool boundary = local.tags[i] == PointTag::Endpoint;
      if (boundary && (local.points[i] == 0.0 || local.points[i] == 1.0)) continue;
      out.add(local.points[i], boundary ? PointTag::Breakpoint : local.tags[i]);
    }
  }
  out.normalize();
  return out;
}

CriticalSet critical_points(const Function& f) {
  return std::visit([](const auto& g) { return critical_points(g); }, f);
}

// ---------------------------------------------------------------- calculus

PiecewisePolynomial subtract(const BernsteinPoly& p, const PiecewiseLinear& f) {
  if (p.lo() != 0.0 || p.hi() != 1.0) {
    throw DomainError("subtract expects a polynomial defined on [0, 1]");
  }
  const auto& pts = f.points();
  std::vector<BernsteinPoly> pieces;
  pieces.reserve(f.segment_count());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i].x;
    const double b = pts[i + 1].x;
    BernsteinPoly local = p.restrict_to(a, b);
    BernsteinPoly segment({pts[i].y, pts[i + 1].y}, a, b);
    const std::size_t n = std::max<std::size_t>(local.degree(), 1);
    if (local.degree() < n) local = local.elevate(n - local.degree());
    segment = segment.elevate(n - 1);
    std::vector<double> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[k] = local.coeffs()[k] - segment.coeffs()[k];
    pieces.emplace_back(std::move(c), a, b);
  }
  return PiecewisePolynomial(std::move(pieces));
}

double integrate(const PiecewiseLinear& f, double a, double b) {
  if (a > b) throw DomainError("integration bounds must satisfy a <= b");
  require_unit(a);
  require_unit(b);
  if (a == b) return 0.0;
  const auto& pts = f.points();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = std::max(a, pts[i].x);
    const double hi = std::min(b, pts[i + 1].x);
    if (!(hi > lo)) continue;
    const double s = f.slope(i);
    const double ylo = pts[i].y + s * (lo - pts[i].x);
    const double yhi = pts[i].y + s * (hi - pts[i].x);
    total += 0.5 * (ylo + yhi) * (hi - lo);
  }
  return total;
}

double integrate(const StepFunction& f, double a, double b) {
  if (a > b) throw DomainError("integration bounds must satisfy a <= b");
  require_unit(a);
  require_unit(b);
  double total = 0.0;
  for (std::size_t i = 0; i < f.pieces().size(); ++i) {
    const auto [plo, phi] = f.piece_bounds(i);
    const double lo = std::max(a, plo);
    const double hi = std::min(b, phi);
    if (hi > lo) total += f.pieces()[i] * (hi - lo);
  }
  return total;
}

}  // namespace lambdavar
