#include "lambdavar/operators.hpp"

#include <algorithm>

#include "lambdavar/error.hpp"

namespace lambdavar {

namespace {

void require_degree(std::size_t n) {
  if (n == 0) throw DomainError("operator degree n must be >= 1");
}

template <class F>
std::vector<double> local_means(const F& f, std::size_t n) {
  std::vector<double> c(n + 1);
  const double m = static_cast<double>(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double a = static_cast<double>(k) / m;
    const double b = k == n ? 1.0 : static_cast<double>(k + 1) / m;
    c[k] = m * integrate(f, a, b);
  }
  return c;
}

}  // namespace

BernsteinPoly bernstein_of(const Function& f, std::size_t n) {
  require_degree(n);
  std::vector<double> c(n + 1);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) {
    const double x = k == n ? 1.0 : static_cast<double>(k) / dn;
    c[k] = eval(f, x);
  }
  return BernsteinPoly(std::move(c));
}

BernsteinPoly kantorovich_of(const PiecewiseLinear& f, std::size_t n) {
  require_degree(n);
  return BernsteinPoly(local_means(f, n));
}

BernsteinPoly kantorovich_of(const StepFunction& f, std::size_t n) {
  require_degree(n);
  return BernsteinPoly(local_means(f, n));
}

PiecewiseLinear kantorovich_aux(const PiecewiseLinear& f, std::size_t n) {
  require_degree(n);
  const std::vector<double> c = local_means(f, n);
  std::vector<Point> pts(n + 1);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k <= n; ++k) {
    pts[k] = {k == n ? 1.0 : static_cast<double>(k) / dn, c[k]};
  }
  return PiecewiseLinear(std::move(pts));
}

Monotonicity monotone_certificate(const BernsteinPoly& p, CertificateMode mode) {
  const BernsteinPoly d = p.derivative();
  const auto& dc = d.coeffs();
  if (std::all_of(dc.begin(), dc.end(), [](double v) { return v == 0.0; })) {
    return Monotonicity::Constant;
  }
  if (mode == CertificateMode::Fast) {
    if (std::all_of(dc.begin(), dc.end(), [](double v) { return v >= 0.0; })) {
      return Monotonicity::Increasing;
    }
    if (std::all_of(dc.begin(), dc.end(), [](double v) { return v <= 0.0; })) {
      return Monotonicity::Decreasing;
    }
  }
  const CriticalSet extrema = isolate_extrema(p);
  if (extrema.size() > 2) return Monotonicity::NotMonotone;
  const double rise = p.coeffs().back() - p.coeffs().front();
  if (rise > 0.0) return Monotonicity::Increasing;
  if (rise < 0.0) return Monotonicity::Decreasing;
  return Monotonicity::Constant;
}

std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Constant: return "constant";
    case Monotonicity::NotMonotone: return "not-monotone";
  }
  return "unknown";
}

BernsteinPoly apply_operator(OperatorKind op, const PiecewiseLinear& f, std::size_t n) {
  return op == OperatorKind::Bernstein ? bernstein_of(f, n) : kantorovich_of(f, n);
}

std::string_view to_string(OperatorKind op) {
  return op == OperatorKind::Bernstein ? "bernstein" : "kantorovich";
}

}  // namespace lambdavar
