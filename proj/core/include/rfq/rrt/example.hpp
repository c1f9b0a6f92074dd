#pragma once

#include <cstddef>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/state.hpp"

namespace rfq::rrt {

/// One regression example: the value to fit for a (state, ground action) pair.
struct RegExample {
  logic::State state;
  logic::GroundAtom action;
  double target = 0.0;
  double weight = 1.0;
};

struct TreeParams {
  int max_depth = 4;
  int min_leaf = 3;
  int max_candidate_literals = 2;
  double min_variance_reduction = 1e-6;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

}  // namespace rfq::rrt
