#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rfq/logic/mode.hpp"
#include "rfq/rrt/example.hpp"
#include "rfq/rrt/tree.hpp"

namespace rfq::rrt {

struct SplitScore {
  double reduction = 0.0;
  double weight_satisfied = 0.0;
  double weight_failed = 0.0;
  bool valid = false;
};

double weighted_mean(std::span<const double> targets, std::span<const double> weights);

/// Population variance, sum_k w_k (y_k - mean)^2 / sum_k w_k. Zero for empty input.
double weighted_variance(std::span<const double> targets, std::span<const double> weights);

/// Var(all) - (W_s/W) Var(satisfied) - (W_f/W) Var(failed). Invalid when
/// either side weighs less than `min_leaf`.
SplitScore score_partition(std::span<const double> targets, std::span<const double> weights,
                           std::span<const char> satisfied, double min_leaf);

/// Partitions by satisfies() with the action bound to A, B, ... and scores it.
SplitScore score_split(std::span<const RegExample> examples, const logic::Conjunction& test, double min_leaf = 1.0);

/// Remembers which examples satisfy (path, test) pairs. Outcomes do not depend
/// on targets, so one cache serves every tree fit to the same example list,
/// e.g. all stages of one boosting run.
class SplitCache {
 public:
  explicit SplitCache(std::size_t example_count) : example_count_(example_count) {}

  /// Per-example outcome: -1 unknown, 0 failed, 1 satisfied.
  std::vector<std::int8_t>& outcomes(const std::string& key);
  std::size_t example_count() const noexcept { return example_count_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::size_t example_count_;
  std::unordered_map<std::string, std::vector<std::int8_t>> entries_;
};

/// Greedy top-down induction. Each node takes the candidate with the largest
/// variance reduction (first in enumeration order on ties) and stops at
/// max_depth, when fewer than 2 * min_leaf examples remain, or when the best
/// reduction is below min_variance_reduction. Leaves hold weighted means.
///
/// All examples must share one action type declared in `bias`.
RelationalTree learn_tree(std::span<const RegExample> examples, const logic::LanguageBias& bias,
                          const TreeParams& params, SplitCache* cache = nullptr);

}  // namespace rfq::rrt
