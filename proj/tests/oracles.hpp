#pragma once

// Reference computations used only by the tests. Nothing here calls the
// library's algorithms; inputs are plain vectors and callables.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// sum_k c_k C(n,k) x^k (1-x)^(n-k)
inline double basis_sum(const std::vector<double>& c, double x) {
  const std::size_t n = c.size() - 1;
  double s = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    s += c[k] * binomial(n, k) * std::pow(x, static_cast<double>(k)) *
         std::pow(1.0 - x, static_cast<double>(n - k));
  }
  return s;
}

/// p'(x) = n sum_k (c_{k+1} - c_k) C(n-1,k) x^k (1-x)^(n-1-k)
inline double basis_derivative(const std::vector<double>& c, double x) {
  const std::size_t n = c.size() - 1;
  if (n == 0) return 0.0;
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<double>(n) * (c[k + 1] - c[k]);
  return basis_sum(d, x);
}

inline double simpson_step(const std::function<double(double)>& g, double a, double b, double fa,
                           double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson_step(g, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         simpson_step(g, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

/// Adaptive Simpson quadrature; [0,1] is pre-split into 64 panels.
inline double integrate(const std::function<double(double)>& g, double a, double b,
                        double eps = 1e-11) {
  constexpr int panels = 64;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    const double flo = g(lo), fhi = g(hi), fm = g(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += simpson_step(g, lo, hi, flo, fm, fhi, whole, eps / panels, 40);
  }
  return total;
}

/// Maximum of sum_j v_j / lambda_{beta(j)} over all permutations beta.
inline double best_by_permutation(std::vector<double> v, const std::vector<double>& lambda) {
  std::sort(v.begin(), v.end());
  double best = 0.0;
  do {
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += v[j] / lambda[j];
    best = std::max(best, s);
  } while (std::next_permutation(v.begin(), v.end()));
  return best;
}

/// Exhaustive V over interval systems with endpoints in `xs`. Every
/// selected subset contributes its consecutive differences, weighted by all
/// permutations of the first few lambdas.
inline double variation_by_enumeration(const std::function<double(double)>& f,
                                       const std::vector<double>& xs,
                                       const std::vector<double>& lambda) {
  const std::size_t n = xs.size();
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) pts.push_back(xs[i]);
    }
    if (pts.size() < 2) continue;
    std::vector<double> v;
    for (std::size_t i = 1; i < pts.size(); ++i) v.push_back(std::abs(f(pts[i]) - f(pts[i - 1])));
    best = std::max(best, best_by_permutation(v, lambda));
  }
  return best;
}

/// Exhaustive restricted variation over a grid: every subset of grid points,
/// consecutive pairs counted only when no longer than delta.
inline double restricted_by_enumeration(const std::function<double(double)>& f,
                                        const std::vector<double>& xs,
                                        const std::vector<double>& lambda, double delta) {
  const std::size_t n = xs.size();
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> v;
    double prev = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      if (prev >= 0.0 && xs[i] - prev <= delta + 1e-12) v.push_back(std::abs(f(xs[i]) - f(prev)));
      prev = xs[i];
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) s += v[j] / lambda[j];
    best = std::max(best, s);
  }
  return best;
}

inline double harmonic(std::size_t n) {
  double s = 0.0;
  for (std::size_t i = n; i >= 1; --i) s += 1.0 / static_cast<double>(i);
  return s;
}

}  // namespace oracle
