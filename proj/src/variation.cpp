#include "lambdavar/variation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lambdavar/error.hpp"
#include "variation_internal.hpp"

namespace lambdavar {

// ---------------------------------------------------------------- IntervalSystem

IntervalSystem::IntervalSystem(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& I = intervals_[i];
    if (!(I.lo >= 0.0 && I.hi <= 1.0 && I.lo <= I.hi)) {
      throw InvalidInput("intervals[" + std::to_string(i) +
                         "]: need 0 <= a <= b <= 1");
    }
  }
  std::vector<std::size_t> order(intervals_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& A = intervals_[a];
    const auto& B = intervals_[b];
    return A.lo != B.lo ? A.lo < B.lo : A.hi < B.hi;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& prev = intervals_[order[k - 1]];
    const auto& cur = intervals_[order[k]];
    if (prev.hi > cur.lo) {
      throw InvalidInput("intervals[" + std::to_string(order[k]) + "]: overlaps intervals[" +
                         std::to_string(order[k - 1]) + "]");
    }
  }
}

double IntervalSystem::mesh() const {
  double m = 0.0;
  for (const auto& I : intervals_) m = std::max(m, I.hi - I.lo);
  return m;
}

std::string_view to_string(VariationMethod m) {
  return m == VariationMethod::Exact ? "exact" : "grid-lower-bound";
}

// ---------------------------------------------------------------- sums

double sigma(const Function& f, const IntervalSystem& sys, const LambdaSequence& seq) {
  double total = 0.0;
  std::size_t k = 1;
  for (const auto& I : sys.intervals()) {
    total += std::abs(eval(f, I.hi) - eval(f, I.lo)) / seq.term(k++);
  }
  return total;
}

double sigma_assigned(const Function& f, std::span<const Interval> witness,
                      std::span<const std::size_t> ranks, const LambdaSequence& seq) {
  if (witness.size() != ranks.size()) {
    throw InvalidInput("assignment: need one rank per witness interval");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < witness.size(); ++j) {
    total += std::abs(eval(f, witness[j].hi) - eval(f, witness[j].lo)) / seq.term(ranks[j]);
  }
  return total;
}

std::vector<std::size_t> best_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = pos + 1;
  return ranks;
}

double best_assignment(std::span<const double> values, const LambdaSequence& seq) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) {
      throw InvalidInput("values[" + std::to_string(i) + "]: must be nonnegative");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double total = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) total += sorted[j] / seq.term(j + 1);
  return total;
}

// ---------------------------------------------------------------- exact subset search

namespace detail {

namespace {

class SubsetSearcher {
 public:
  SubsetSearcher(std::span<const double> xs, std::span<const double> ys,
                 const LambdaSequence& seq, double max_gap)
      : xs_(xs), ys_(ys), max_gap_(max_gap) {
    const std::size_t n = xs.size();
    inv_.resize(n);
    for (std::size_t j = 0; j < n; ++j) inv_[j] = 1.0 / seq.term(j + 1);
    range_.assign(n + 1, 0.0);
    tv_.assign(n + 1, 0.0);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = n; i-- > 0;) {
      lo = std::min(lo, ys[i]);
      hi = std::max(hi, ys[i]);
      range_[i] = hi - lo;
      tv_[i] = i + 1 < n ? tv_[i + 1] + std::abs(ys[i + 1] - ys[i]) : 0.0;
    }
  }

  SubsetChoice run() {
    const std::size_t n = xs_.size();
    for (std::size_t first = 0; first + 1 < n; ++first) {
      chosen_.assign(1, first);
      visit(first);
    }
    return {best_value_, best_chosen_};
  }

 private:
  bool counts(std::size_t a, std::size_t b) const { return xs_[b] - xs_[a] <= max_gap_; }

  double score() const {
    double s = 0.0;
    for (std::size_t j = 0; j < sorted_.size(); ++j) s += sorted_[j] * inv_[j];
    return s;
  }

  // Future increments: at most `slots` of them, each <= range, total <= tv.
  // The extremal vector (range, ..., range, remainder) dominates all of these.
  double bound(std::size_t last) const {
    const std::size_t slots = xs_.size() - 1 - last;
    const double R = range_[last];
    double budget = tv_[last];
    double s = 0.0;
    std::size_t rank = 0;
    std::size_t k = 0;
    std::size_t used = 0;
    while (rank < inv_.size()) {
      double pad = 0.0;
      if (used < slots && budget > 0.0) pad = std::min(R, budget);
      const double cur = k < sorted_.size() ? sorted_[k] : 0.0;
      if (pad <= 0.0 && k >= sorted_.size()) break;
      if (pad > cur) {
        s += pad * inv_[rank];
        budget -= pad;
        ++used;
      } else {
        s += cur * inv_[rank];
        ++k;
      }
      ++rank;
    }
    return s;
  }

  void visit(std::size_t last) {
    if (chosen_.size() >= 2) {
      const double s = score();
      if (s > best_value_) {
        best_value_ = s;
        best_chosen_ = chosen_;
      }
    }
    if (last + 1 >= xs_.size()) return;
    if (bound(last) <= best_value_) return;
    for (std::size_t next = last + 1; next < xs_.size(); ++next) {
      const bool c = counts(last, next);
      const double d = std::abs(ys_[next] - ys_[last]);
      if (c) sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), d, std::greater<>()), d);
      chosen_.push_back(next);
      visit(next);
      chosen_.pop_back();
      if (c) {
        auto it = std::lower_bound(sorted_.begin(), sorted_.end(), d, std::greater<>());
        sorted_.erase(it);
      }
    }
  }

  std::span<const double> xs_;
  std::span<const double> ys_;
  double max_gap_;
  std::vector<double> inv_;
  std::vector<double> range_;
  std::vector<double> tv_;
  std::vector<double> sorted_;
  std::vector<std::size_t> chosen_;
  double best_value_ = 0.0;
  std::vector<std::size_t> best_chosen_;
};

}  // namespace

SubsetChoice exact_subset_search(std::span<const double> xs, std::span<const double> ys,
                                 const LambdaSequence& seq, double max_gap) {
  if (xs.size() < 2) return {};
  return SubsetSearcher(xs, ys, seq, max_gap).run();
}

VariationResult result_from_intervals(std::span<const double> xs, std::span<const double> ys,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                      const LambdaSequence& seq, VariationMethod method) {
  VariationResult r;
  r.method = method;
  std::vector<double> diffs;
  for (auto [a, b] : pairs) {
    r.witness.push_back({xs[a], xs[b]});
    diffs.push_back(std::abs(ys[b] - ys[a]));
  }
  r.assignment = best_ranks(diffs);
  for (std::size_t j = 0; j < diffs.size(); ++j) r.value += diffs[j] / seq.term(r.assignment[j]);
  return r;
}

VariationResult solve_on_points(std::span<const double> xs, std::span<const double> ys,
                                const LambdaSequence& seq, double max_gap,
                                VariationMethod method) {
  const SubsetChoice choice = exact_subset_search(xs, ys, seq, max_gap);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 1; k < choice.chosen.size(); ++k) {
    const std::size_t a = choice.chosen[k - 1];
    const std::size_t b = choice.chosen[k];
    if (xs[b] - xs[a] <= max_gap) pairs.emplace_back(a, b);
  }
  return result_from_intervals(xs, ys, pairs, seq, method);
}

}  // namespace detail

namespace {

std::vector<double> values_at(const Function& f, std::span<const double> xs) {
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = eval(f, xs[i]);
  return ys;
}

void require_point_set(std::span<const double> pts, std::size_t cap, const char* what) {
  if (pts.size() > cap) {
    std::ostringstream os;
    os << what << ": " << pts.size() << " candidate points exceed the solver cap of " << cap
       << "; use grid_oracle on a coarser grid for a lower bound";
    throw ResourceError(os.str());
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i] >= 0.0 && pts[i] <= 1.0)) {
      throw InvalidInput("points[" + std::to_string(i) + "]: must lie in [0, 1]");
    }
    if (i > 0 && !(pts[i] > pts[i - 1])) {
      throw InvalidInput("points[" + std::to_string(i) + "]: must be strictly increasing");
    }
  }
}

}  // namespace

VariationResult lambda_variation_on_set(const Function& f, const LambdaSequence& seq,
                                        std::span<const double> points) {
  require_point_set(points, kExactSolverCap, "lambda_variation_on_set");
  const std::vector<double> ys = values_at(f, points);
  return detail::solve_on_points(points, ys, seq, std::numeric_limits<double>::infinity(),
                                 VariationMethod::Exact);
}

VariationResult lambda_variation(const Function& f, const LambdaSequence& seq) {
  const CriticalSet cs = critical_points(f);
  if (cs.size() > kExactSolverCap) {
    std::ostringstream os;
    os << "lambda_variation: " << cs.size() << " critical points exceed the solver cap of "
       << kExactSolverCap << "; use grid_oracle for a lower bound";
    throw ResourceError(os.str());
  }
  return lambda_variation_on_set(f, seq, cs.points);
}

// ---------------------------------------------------------------- oracle

double grid_oracle(const Function& f, const LambdaSequence& seq, std::span<const double> grid,
                   std::size_t cap) {
  if (cap > kOracleCap) throw DomainError("grid_oracle cap may not exceed 16");
  if (grid.size() > cap) {
    throw ResourceError("grid_oracle: grid of " + std::to_string(grid.size()) +
                        " points exceeds cap " + std::to_string(cap));
  }
  const std::size_t n = grid.size();
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = eval(f, grid[i]);
  std::vector<double> w(n + 1, 0.0);
  for (std::size_t j = 1; j < n; ++j) w[j] = 1.0 / seq.term(j);

  double best = 0.0;
  std::vector<double> diffs;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    diffs.clear();
    int prev = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      if (prev >= 0) diffs.push_back(std::abs(ys[i] - ys[static_cast<std::size_t>(prev)]));
      prev = static_cast<int>(i);
    }
    // Sorted pairing, written out independently of best_assignment.
    std::vector<double> desc = diffs;
    for (std::size_t a = 0; a < desc.size(); ++a) {
      for (std::size_t b = a + 1; b < desc.size(); ++b) {
        if (desc[b] > desc[a]) std::swap(desc[a], desc[b]);
      }
    }
    double sorted_value = 0.0;
    for (std::size_t j = 0; j < desc.size(); ++j) sorted_value += desc[j] * w[j + 1];
    double value = sorted_value;
    if (n <= 8) {
      std::vector<std::size_t> perm(diffs.size());
      std::iota(perm.begin(), perm.end(), 1);
      double perm_best = 0.0;
      do {
        double s = 0.0;
        for (std::size_t j = 0; j < diffs.size(); ++j) s += diffs[j] * w[perm[j]];
        perm_best = std::max(perm_best, s);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (std::abs(perm_best - sorted_value) > 1e-12 * std::max(1.0, perm_best)) {
        throw InternalError("grid_oracle: sorted pairing disagrees with permutation enumeration");
      }
      value = perm_best;
    }
    best = std::max(best, value);
  }
  return best;
}

// ---------------------------------------------------------------- derived quantities

double tail_variation(const Function& f, const LambdaSequence& seq, std::size_t m) {
  return lambda_variation(f, seq.tail(m)).value;
}

double lambda_norm(const Function& f, const LambdaSequence& seq) {
  return lambda_variation(f, seq).value + std::abs(eval(f, 0.0));
}

double lambda_distance(const BernsteinPoly& p, const PiecewiseLinear& f,
                       const LambdaSequence& seq) {
  return lambda_norm(subtract(p, f), seq);
}

Phi Phi::power(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("phi power exponent must be >= 1");
  return {Kind::Power, q};
}

double Phi::operator()(double t) const {
  return kind == Kind::Identity ? t : std::pow(t, q);
}

double phi_variation_grid(std::span<const Point> samples, const Phi& phi) {
  if (samples.size() < 2) throw DomainError("phi_variation_grid needs at least 2 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].x > samples[i - 1].x)) {
      throw InvalidInput("samples[" + std::to_string(i) + "]: x must be strictly increasing");
    }
  }
  // best[j]: largest sum over subsequences ending at sample j.
  std::vector<double> best(samples.size(), 0.0);
  double answer = 0.0;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      best[j] = std::max(best[j], best[i] + phi(std::abs(samples[j].y - samples[i].y)));
    }
    answer = std::max(answer, best[j]);
  }
  return answer;
}

}  // namespace lambdavar
