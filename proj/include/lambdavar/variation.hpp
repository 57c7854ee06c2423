#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lambdavar/functions.hpp"
#include "lambdavar/lambda_sequence.hpp"

namespace lambdavar {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Finite sequence of closed intervals in [0, 1] meeting at most at endpoints.
/// The order of the intervals is the order of the weights they receive.
class IntervalSystem {
 public:
  IntervalSystem() = default;
  explicit IntervalSystem(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  bool empty() const noexcept { return intervals_.empty(); }
  /// Length of the longest interval.
  double mesh() const;

 private:
  std::vector<Interval> intervals_;
};

enum class VariationMethod { Exact, GridLowerBound };

std::string_view to_string(VariationMethod m);

struct VariationResult {
  double value = 0.0;
  std::vector<Interval> witness;
  /// 1-based weight rank received by each witness interval.
  std::vector<std::size_t> assignment;
  VariationMethod method = VariationMethod::Exact;
  /// Certified upper bound over the candidate grid, when one was computed.
  std::optional<double> grid_upper_bound;
};

/// Maximum number of candidate points for the exact subset search.
inline constexpr std::size_t kExactSolverCap = 24;
/// Maximum grid size for the brute-force oracle.
inline constexpr std::size_t kOracleCap = 16;
/// Maximum candidate count for restricted variation on large grids.
inline constexpr std::size_t kRestrictedGridCap = 4096;

/// sum_k |f(b_k) - f(a_k)| / lambda_k in the system's own order.
double sigma(const Function& f, const IntervalSystem& sys, const LambdaSequence& seq);

/// sum_j |f(I_j)| / lambda_{ranks[j]} for an explicit rank assignment.
double sigma_assigned(const Function& f, std::span<const Interval> witness,
                      std::span<const std::size_t> ranks, const LambdaSequence& seq);

/// Largest value of sum_j v_j / lambda_{beta(j)} over permutations beta:
/// values sorted descending against the nondecreasing weights.
double best_assignment(std::span<const double> values, const LambdaSequence& seq);

/// 1-based ranks realizing best_assignment; ties keep original index order.
std::vector<std::size_t> best_ranks(std::span<const double> values);

/// Exact Lambda-variation for functions with finitely many monotone pieces.
VariationResult lambda_variation(const Function& f, const LambdaSequence& seq);

/// Lambda-variation over interval systems whose endpoints lie in `points`.
VariationResult lambda_variation_on_set(const Function& f, const LambdaSequence& seq,
                                        std::span<const double> points);

/// Brute-force value over every subset of `grid`; independent of the solver.
double grid_oracle(const Function& f, const LambdaSequence& seq, std::span<const double> grid,
                   std::size_t cap = kOracleCap);

/// Variation restricted to interval systems with mesh <= delta.
VariationResult restricted_variation(const Function& f, const LambdaSequence& seq, double delta,
                                     std::size_t resolution);

struct ProfileEntry {
  double delta = 0.0;
  VariationResult result;
};

std::vector<ProfileEntry> wiener_profile(const Function& f, const LambdaSequence& seq,
                                         std::span<const double> deltas, std::size_t resolution);

/// min over m <= m_max of m L delta / lambda_1 + L / lambda_m.
double lipschitz_restricted_bound(double lipschitz, const LambdaSequence& seq, double delta,
                                  std::size_t m_max);

/// Lambda-variation after dropping the first m weights.
double tail_variation(const Function& f, const LambdaSequence& seq, std::size_t m);

/// V_Lambda(f) + |f(0)|
double lambda_norm(const Function& f, const LambdaSequence& seq);

/// ||p - f||_Lambda
double lambda_distance(const BernsteinPoly& p, const PiecewiseLinear& f,
                       const LambdaSequence& seq);

struct Phi {
  enum class Kind { Identity, Power };
  Kind kind = Kind::Identity;
  double q = 1.0;

  static Phi identity() { return {}; }
  static Phi power(double q);
  double operator()(double t) const;
};

/// Largest sum of phi(|y_j - y_i|) over increasing subsequences of the samples.
double phi_variation_grid(std::span<const Point> samples, const Phi& phi);

}  // namespace lambdavar
