#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lambdavar {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Continuous piecewise linear function on [0, 1] given by its breakpoints.
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<Point> points);

  static PiecewiseLinear identity();
  static PiecewiseLinear hat();
  static PiecewiseLinear abs_mid();
  /// (0,0), (1/3,1/2), (2/3,1/2), (1,1)
  static PiecewiseLinear counterexample();
  static PiecewiseLinear linear(double slope, double intercept);

  double operator()(double x) const;
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t segment_count() const noexcept { return points_.size() - 1; }
  double slope(std::size_t segment) const;
  /// Largest absolute slope.
  double lipschitz_constant() const;

 private:
  std::vector<Point> points_;
};

/// Step function: constant on the open pieces between cut points, with a
/// separately stored value at each cut lying between the adjacent pieces.
class StepFunction {
 public:
  StepFunction(std::vector<double> cuts, std::vector<double> pieces,
               std::vector<double> point_values);

  double operator()(double x) const;
  const std::vector<double>& cuts() const noexcept { return cuts_; }
  const std::vector<double>& pieces() const noexcept { return pieces_; }
  const std::vector<double>& point_values() const noexcept { return point_values_; }
  /// Left and right boundary of piece i.
  std::pair<double, double> piece_bounds(std::size_t i) const;

 private:
  std::vector<double> cuts_;
  std::vector<double> pieces_;
  std::vector<double> point_values_;
};

/// Polynomial in the Bernstein basis of degree n over [lo, hi] (default [0, 1]).
class BernsteinPoly {
 public:
  explicit BernsteinPoly(std::vector<double> coeffs, double lo = 0.0, double hi = 1.0);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// De Casteljau evaluation. Throws DomainError outside [lo, hi].
  double operator()(double x) const;
  /// De Casteljau evaluation at the local parameter t in [0, 1].
  double eval_local(double t) const;

  BernsteinPoly derivative() const;
  BernsteinPoly elevate(std::size_t r) const;
  /// Splits at local parameter t into the pieces over [lo, x(t)] and [x(t), hi].
  std::pair<BernsteinPoly, BernsteinPoly> split(double t) const;
  /// The same polynomial re-expressed over [a, b] within [lo, hi].
  BernsteinPoly restrict_to(double a, double b) const;

 private:
  std::vector<double> coeffs_;
  double lo_;
  double hi_;
};

/// Ordered Bernstein pieces, each carrying its own interval; the intervals
/// partition [0, 1].
class PiecewisePolynomial {
 public:
  explicit PiecewisePolynomial(std::vector<BernsteinPoly> pieces);

  double operator()(double x) const;
  const std::vector<BernsteinPoly>& pieces() const noexcept { return pieces_; }

 private:
  std::vector<BernsteinPoly> pieces_;
};

using Function = std::variant<PiecewiseLinear, StepFunction, BernsteinPoly, PiecewisePolynomial>;

double eval(const Function& f, double x);

enum class PointTag { Endpoint, Breakpoint, Root, Representative };

struct CriticalSet {
  std::vector<double> points;  // sorted, endpoints included
  std::vector<PointTag> tags;

  void add(double x, PointTag tag);
  /// Sorts and merges points closer than 1e-12; the first tag wins except
  /// that endpoint tags are kept.
  void normalize();
  std::size_t size() const noexcept { return points.size(); }
};

inline constexpr double kDefaultRootTolerance = 1e-12;

/// Interior points where the derivative changes sign, plus both domain ends.
/// Root-free panels are certified by the sign of the derivative's Bernstein
/// coefficients; touching (even multiplicity) roots are excluded because the
/// certified sign on both sides agrees.
CriticalSet isolate_extrema(const BernsteinPoly& p, double tol = kDefaultRootTolerance);

CriticalSet critical_points(const PiecewiseLinear& f);
CriticalSet critical_points(const StepFunction& f);
CriticalSet critical_points(const BernsteinPoly& p);
CriticalSet critical_points(const PiecewisePolynomial& p);
CriticalSet critical_points(const Function& f);

/// p - f as one Bernstein piece per linear segment of f.
PiecewisePolynomial subtract(const BernsteinPoly& p, const PiecewiseLinear& f);

/// Exact integral over [a, b].
double integrate(const PiecewiseLinear& f, double a, double b);
double integrate(const StepFunction& f, double a, double b);

}  // namespace lambdavar
