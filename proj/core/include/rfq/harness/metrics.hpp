#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rfq/domains/domain.hpp"
#include "rfq/qlearn/q_function.hpp"
#include "rfq/qlearn/transition.hpp"

namespace rfq::harness {

struct IterationMetrics {
  int iteration = 0;
  std::optional<double> mean_abs_bellman_error;  // absent for an empty dataset
  double avg_test_reward = 0.0;
  double pct_goals = 0.0;
  double elapsed_ms = 0.0;
};

/// Mean |bellman_residual| over the dataset; nullopt when it is empty.
std::optional<double> mean_abs_bellman_error(const qlearn::QFunction& q, const domains::Domain& domain,
                                             std::span<const qlearn::Transition> dataset, double gamma);

/// Fixed evaluation starts with their shortest goal distances.
struct TestSet {
  std::vector<logic::State> starts;
  std::vector<std::optional<int>> optimal_steps;  // nullopt: search budget exceeded
};

/// Each start draws its object counts uniformly from `counts`.
TestSet make_test_set(const domains::Domain& domain, const std::vector<domains::ObjectCounts>& counts, int n,
                      Rng& rng);
TestSet make_test_set(const domains::Domain& domain, std::vector<logic::State> starts);

using Policy = std::function<logic::GroundAtom(const logic::State&, std::span<const logic::GroundAtom>)>;

/// Greedy policy of q with lexicographic tie-breaking.
Policy greedy_policy(const qlearn::QFunction& q);

struct EvalResult {
  double avg_reward = 0.0;  // mean undiscounted episode return
  double pct_goals = 0.0;   // fraction reaching a goal within optimal + slack steps
  std::vector<double> returns;
  std::vector<int> steps_to_goal;  // -1 when the goal was not reached
};

/// One episode per start, each capped at max_steps. A start whose optimal
/// distance is unknown counts as a success when it reaches the goal at all.
EvalResult evaluate_policy(const Policy& policy, const domains::Domain& domain, const TestSet& tests, int max_steps,
                           int goal_slack);
EvalResult evaluate_policy(const qlearn::QFunction& q, const domains::Domain& domain, const TestSet& tests,
                           int max_steps, int goal_slack);

}  // namespace rfq::harness
