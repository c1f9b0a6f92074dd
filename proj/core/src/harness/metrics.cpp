#include "rfq/harness/metrics.hpp"

#include <cmath>

#include "rfq/error.hpp"

namespace rfq::harness {

std::optional<double> mean_abs_bellman_error(const qlearn::QFunction& q, const domains::Domain& domain,
                                             std::span<const qlearn::Transition> dataset, double gamma) {
  if (dataset.empty()) {
    return std::nullopt;
  }
  double sum = 0.0;
  for (const auto& t : dataset) {
    sum += std::abs(qlearn::bellman_residual(q, domain, t, gamma));
  }
  return sum / static_cast<double>(dataset.size());
}

TestSet make_test_set(const domains::Domain& domain, const std::vector<domains::ObjectCounts>& counts, int n,
                      Rng& rng) {
  if (counts.empty()) {
    throw ConfigError("no test counts");
  }
  std::vector<logic::State> starts;
  for (int i = 0; i < n; ++i) {
    const auto& c = counts[uniform_index(rng, counts.size())];
    starts.push_back(domain.initial_state(c, rng));
  }
  return make_test_set(domain, std::move(starts));
}

TestSet make_test_set(const domains::Domain& domain, std::vector<logic::State> starts) {
  TestSet out;
  out.optimal_steps.reserve(starts.size());
  for (const auto& s : starts) {
    out.optimal_steps.push_back(domain.optimal_steps(s));
  }
  out.starts = std::move(starts);
  return out;
}

Policy greedy_policy(const qlearn::QFunction& q) {
  return [&q](const logic::State& s, std::span<const logic::GroundAtom> actions) {
    Rng unused(0);
    return qlearn::epsilon_greedy_action(q, s, actions, 0.0, unused);
  };
}

EvalResult evaluate_policy(const Policy& policy, const domains::Domain& domain, const TestSet& tests, int max_steps,
                           int goal_slack) {
  EvalResult out;
  const auto n = tests.starts.size();
  if (n == 0) {
    return out;
  }
  std::size_t successes = 0;
  for (std::size_t e = 0; e < n; ++e) {
    logic::State s = tests.starts[e];
    double total = 0.0;
    int reached = -1;
    if (domain.is_goal(s)) {
      reached = 0;
    }
    for (int k = 0; k < max_steps && reached < 0; ++k) {
      auto actions = domain.legal_actions(s);
      auto a = policy(s, actions);
      auto step = domain.step(s, a);
      total += step.reward;
      s = std::move(step.next);
      if (step.terminal) {
        reached = k + 1;
      }
    }
    const auto& opt = tests.optimal_steps[e];
    bool success = reached >= 0 && (!opt || reached <= *opt + goal_slack);
    successes += success ? 1 : 0;
    out.returns.push_back(total);
    out.steps_to_goal.push_back(reached);
  }
  double sum = 0.0;
  for (double r : out.returns) {
    sum += r;
  }
  out.avg_reward = sum / static_cast<double>(n);
  out.pct_goals = static_cast<double>(successes) / static_cast<double>(n);
  return out;
}

EvalResult evaluate_policy(const qlearn::QFunction& q, const domains::Domain& domain, const TestSet& tests,
                           int max_steps, int goal_slack) {
  return evaluate_policy(greedy_policy(q), domain, tests, max_steps, goal_slack);
}

}  // namespace rfq::harness
