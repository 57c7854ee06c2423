// Restricted (mesh <= delta) Lambda-variation.
//
// Small candidate grids go through the exact subset search. Larger grids use
// a threshold relaxation: with w_k = 1/lambda_k - 1/lambda_{k+1} (w_K =
// 1/lambda_K) the sorted weighted sum equals sum_k w_k Top_k, and Top_k(v) <=
// k t_k + sum_i (v_i - t_k)^+ for any t_k >= 0. For fixed thresholds the
// right-hand side is separable over intervals, so a DP over the grid gives an
// upper bound; its maximizing system, re-scored exactly, gives a lower bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lambdavar/error.hpp"
#include "lambdavar/variation.hpp"
#include "variation_internal.hpp"

namespace lambdavar {

namespace {

constexpr double kGapSlack = 1e-12;
constexpr double kDedupe = 1e-12;

std::vector<double> dedupe(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (out.empty() || x - out.back() > kDedupe) out.push_back(x);
  }
  return out;
}

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

class ThresholdRelaxation {
 public:
  ThresholdRelaxation(std::span<const double> xs, std::span<const double> ys,
                      const LambdaSequence& seq, double gap)
      : xs_(xs), ys_(ys) {
    const std::size_t n = xs.size();
    K_ = n - 1;
    w_.resize(K_);
    inv_.resize(K_);
    for (std::size_t k = 0; k < K_; ++k) inv_[k] = 1.0 / seq.term(k + 1);
    for (std::size_t k = 0; k < K_; ++k) w_[k] = k + 1 < K_ ? inv_[k] - inv_[k + 1] : inv_[k];
    first_.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t i = j;
      while (i > 0 && xs[j] - xs[i - 1] <= gap) --i;
      first_[j] = i;
    }
  }

  struct Outcome {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    Pairs pairs;
  };

  Outcome solve() {
    Outcome out;
    std::vector<double> seeds{0.0};
    std::vector<double> values;
    for (std::size_t j = 0; j < xs_.size(); ++j) {
      for (std::size_t i = first_[j]; i < j; ++i) values.push_back(std::abs(ys_[j] - ys_[i]));
    }
    std::sort(values.begin(), values.end());
    if (!values.empty()) {
      for (int q = 1; q < 8; ++q) {
        seeds.push_back(values[(values.size() - 1) * static_cast<std::size_t>(q) / 8]);
      }
    }
    for (double c : seeds) {
      std::vector<double> t(K_, c);
      Pairs current = argmax(t, out.upper);
      double current_value = score(current);
      for (int iter = 0; iter < 24; ++iter) {
        if (current_value > out.lower) {
          out.lower = current_value;
          out.pairs = current;
        }
        std::vector<double> tight = thresholds(current);
        if (tight == t) break;
        t = std::move(tight);
        Pairs next = argmax(t, out.upper);
        const double next_value = score(next);
        if (!(next_value > current_value)) break;
        current = std::move(next);
        current_value = next_value;
      }
      if (current_value > out.lower) {
        out.lower = current_value;
        out.pairs = current;
      }
    }
    out.upper = std::max(out.upper, out.lower);
    return out;
  }

 private:
  std::vector<double> diffs(const Pairs& pairs) const {
    std::vector<double> d;
    d.reserve(pairs.size());
    for (auto [a, b] : pairs) d.push_back(std::abs(ys_[b] - ys_[a]));
    return d;
  }

  double score(const Pairs& pairs) const {
    std::vector<double> d = diffs(pairs);
    std::sort(d.begin(), d.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) s += d[j] * inv_[j];
    return s;
  }

  std::vector<double> thresholds(const Pairs& pairs) const {
    std::vector<double> d = diffs(pairs);
    std::sort(d.begin(), d.end(), std::greater<>());
    d.resize(K_, 0.0);
    return d;
  }

  // Maximizes sum_i phi_t(v_i) (ties: larger plain sum) and tightens `upper`.
  Pairs argmax(const std::vector<double>& t, double& upper) const {
    // suffix sums over ranks k with t_k < v; t is nonincreasing.
    std::vector<double> wsuf(K_ + 1, 0.0), wtsuf(K_ + 1, 0.0);
    for (std::size_t k = K_; k-- > 0;) {
      wsuf[k] = wsuf[k + 1] + w_[k];
      wtsuf[k] = wtsuf[k + 1] + w_[k] * t[k];
    }
    auto phi = [&](double v) {
      const auto idx = static_cast<std::size_t>(
          std::partition_point(t.begin(), t.end(), [v](double tk) { return tk >= v; }) -
          t.begin());
      return std::max(0.0, v * wsuf[idx] - wtsuf[idx]);
    };

    const std::size_t n = xs_.size();
    std::vector<double> best_phi(n, 0.0), best_sum(n, 0.0);
    std::vector<std::size_t> parent(n, n);
    for (std::size_t j = 1; j < n; ++j) {
      best_phi[j] = best_phi[j - 1];
      best_sum[j] = best_sum[j - 1];
      for (std::size_t i = first_[j]; i < j; ++i) {
        const double v = std::abs(ys_[j] - ys_[i]);
        const double cp = best_phi[i] + phi(v);
        const double cs = best_sum[i] + v;
        if (cp > best_phi[j] || (cp == best_phi[j] && cs > best_sum[j])) {
          best_phi[j] = cp;
          best_sum[j] = cs;
          parent[j] = i;
        }
      }
    }
    double fixed = 0.0;
    for (std::size_t k = 0; k < K_; ++k) fixed += w_[k] * static_cast<double>(k + 1) * t[k];
    upper = std::min(upper, fixed + best_phi[n - 1]);

    Pairs pairs;
    std::size_t j = n - 1;
    while (j > 0) {
      if (parent[j] < n) {
        pairs.emplace_back(parent[j], j);
        j = parent[j];
      } else {
        --j;
      }
    }
    std::reverse(pairs.begin(), pairs.end());
    return pairs;
  }

  std::span<const double> xs_;
  std::span<const double> ys_;
  std::size_t K_ = 0;
  std::vector<double> w_;
  std::vector<double> inv_;
  std::vector<std::size_t> first_;
};

}  // namespace

VariationResult restricted_variation(const Function& f, const LambdaSequence& seq, double delta,
                                     std::size_t resolution) {
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("delta must lie in (0, 1]");
  if (resolution == 0) throw DomainError("resolution must be >= 1");

  const CriticalSet cs = critical_points(f);
  std::vector<double> cand = cs.points;
  for (std::size_t i = 0; i <= resolution; ++i) {
    cand.push_back(i == resolution ? 1.0 : static_cast<double>(i) / static_cast<double>(resolution));
  }

  // For piecewise linear f an optimal system has every endpoint at a
  // breakpoint shifted by an integer multiple of delta.
  const auto* plf = std::get_if<PiecewiseLinear>(&f);
  if (plf != nullptr) {
    const double steps = std::floor(1.0 / delta) + 1.0;
    if (steps * static_cast<double>(plf->points().size()) > 4.0 * kRestrictedGridCap) {
      throw ResourceError("restricted_variation: delta lattice too large; increase delta");
    }
    for (const Point& b : plf->points()) {
      for (double k = 0.0; k <= steps; k += 1.0) {
        const double up = b.x + k * delta;
        const double down = b.x - k * delta;
        if (up <= 1.0) cand.push_back(up);
        if (down >= 0.0) cand.push_back(down);
      }
    }
  } else {
    for (double x : cs.points) {
      if (x + delta <= 1.0) cand.push_back(x + delta);
      if (x - delta >= 0.0) cand.push_back(x - delta);
    }
  }
  cand = dedupe(std::move(cand));
  if (cand.size() > kRestrictedGridCap) {
    std::ostringstream os;
    os << "restricted_variation: " << cand.size() << " candidate points exceed the cap of "
       << kRestrictedGridCap << "; lower the resolution";
    throw ResourceError(os.str());
  }

  std::vector<double> ys(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i) ys[i] = eval(f, cand[i]);
  const double gap = delta + kGapSlack;

  VariationResult r;
  if (cand.size() <= kExactSolverCap) {
    r = detail::solve_on_points(cand, ys, seq, gap, VariationMethod::GridLowerBound);
    r.grid_upper_bound = r.value;
  } else {
    ThresholdRelaxation relax(cand, ys, seq, gap);
    const auto outcome = relax.solve();
    r = detail::result_from_intervals(cand, ys, outcome.pairs, seq,
                                      VariationMethod::GridLowerBound);
    r.grid_upper_bound = std::max(outcome.upper, r.value);
  }
  const bool certified = *r.grid_upper_bound - r.value <= 1e-12 * std::max(1.0, r.value);
  if (plf != nullptr && certified) r.method = VariationMethod::Exact;
  return r;
}

std::vector<ProfileEntry> wiener_profile(const Function& f, const LambdaSequence& seq,
                                         std::span<const double> deltas, std::size_t resolution) {
  if (deltas.size() < 2) throw DomainError("wiener profile needs at least 2 deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) {
      throw DomainError("wiener profile deltas must be strictly decreasing");
    }
  }
  std::vector<ProfileEntry> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back({d, restricted_variation(f, seq, d, resolution)});
  return out;
}

double lipschitz_restricted_bound(double lipschitz, const LambdaSequence& seq, double delta,
                                  std::size_t m_max) {
  if (m_max == 0) throw DomainError("m_max must be >= 1");
  const double l1 = seq.term(1);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double b = static_cast<double>(m) * lipschitz * delta / l1 + lipschitz / seq.term(m);
    best = std::min(best, b);
  }
  return best;
}

}  // namespace lambdavar
