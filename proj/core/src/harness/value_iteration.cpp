#include "rfq/harness/value_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rfq/error.hpp"

namespace rfq::harness {

std::optional<std::size_t> TabularQ::find(const logic::State& s) const {
  auto it = index.find(s);
  if (it == index.end()) {
    return std::nullopt;
  }
  return it->second;
}

double TabularQ::value(std::size_t s) const {
  const auto& row = entries[s];
  if (row.empty()) {
    return 0.0;
  }
  double best = row.front().q;
  for (const auto& e : row) {
    best = std::max(best, e.q);
  }
  return best;
}

const logic::GroundAtom& TabularQ::greedy(std::size_t s) const {
  const auto& row = entries[s];
  if (row.empty()) {
    throw DomainError("no actions in this state");
  }
  // Rows are lexicographically sorted, so the first maximum wins ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < row.size(); ++i) {
    if (row[i].q > row[best].q) {
      best = i;
    }
  }
  return row[best].action;
}

double TabularQ::bellman_residual(double gamma) const {
  double worst = 0.0;
  for (const auto& row : entries) {
    for (const auto& e : row) {
      worst = std::max(worst, std::abs(e.reward + gamma * value(e.next) - e.q));
    }
  }
  return worst;
}

TabularQ tabular_value_iteration(const domains::Domain& domain, std::span<const logic::State> seeds, double gamma,
                                 double tol, std::size_t max_states, int max_sweeps) {
  TabularQ t;
  std::deque<std::size_t> frontier;
  auto intern = [&](const logic::State& s) {
    auto [it, fresh] = t.index.emplace(s, t.states.size());
    if (fresh) {
      if (t.states.size() >= max_states) {
        throw DomainError("state space exceeds " + std::to_string(max_states) + " states");
      }
      t.states.push_back(s);
      t.entries.emplace_back();
      frontier.push_back(it->second);
    }
    return it->second;
  };
  for (const auto& s : seeds) {
    intern(s);
  }
  while (!frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop_front();
    logic::State s = t.states[i];
    for (const auto& a : domain.legal_actions(s)) {
      auto step = domain.step(s, a);
      std::size_t next = intern(step.next);
      t.entries[i].push_back(TabularQ::Entry{a, next, step.reward, 0.0});
    }
  }

  std::vector<double> values(t.states.size(), 0.0);
  for (t.sweeps = 1; t.sweeps <= max_sweeps; ++t.sweeps) {
    double delta = 0.0;
    for (auto& row : t.entries) {
      for (auto& e : row) {
        double updated = e.reward + gamma * values[e.next];
        delta = std::max(delta, std::abs(updated - e.q));
        e.q = updated;
      }
    }
    for (std::size_t s = 0; s < values.size(); ++s) {
      values[s] = t.value(s);
    }
    if (delta < tol) {
      return t;
    }
  }
  throw DomainError("value iteration did not converge");
}

}  // namespace rfq::harness
