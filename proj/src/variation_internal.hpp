#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lambdavar/variation.hpp"

namespace lambdavar::detail {

struct SubsetChoice {
  double value = 0.0;
  std::vector<std::size_t> chosen;  // indices into the candidate points
};

/// Branch-and-bound over subsets of the candidate points. Consecutive chosen
/// points form an interval when they are at most max_gap apart; longer gaps
/// are skipped. Returns the lexicographically first maximizer.
SubsetChoice exact_subset_search(std::span<const double> xs, std::span<const double> ys,
                                 const LambdaSequence& seq, double max_gap);

VariationResult result_from_intervals(std::span<const double> xs, std::span<const double> ys,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                      const LambdaSequence& seq, VariationMethod method);

VariationResult solve_on_points(std::span<const double> xs, std::span<const double> ys,
                                const LambdaSequence& seq, double max_gap,
                                VariationMethod method);

}  // namespace lambdavar::detail
