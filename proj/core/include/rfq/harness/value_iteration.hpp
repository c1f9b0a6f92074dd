#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rfq/domains/domain.hpp"

namespace rfq::harness {

/// Exact Q-table of a grounded, deterministic instance.
struct TabularQ {
  struct Entry {
    logic::GroundAtom action;
    std::size_t next = 0;  // index into states
    double reward = 0.0;
    double q = 0.0;
  };

  std::vector<logic::State> states;
  std::vector<std::vector<Entry>> entries;  // per state, legal actions in lexicographic order
  std::unordered_map<logic::State, std::size_t, logic::StateHash> index;
  int sweeps = 0;

  std::optional<std::size_t> find(const logic::State& s) const;
  /// max_a Q(s, a); 0 for states without actions.
  double value(std::size_t s) const;
  /// argmax, lexicographically first on ties. Requires a non-goal state.
  const logic::GroundAtom& greedy(std::size_t s) const;
  /// max over states and actions of |T*Q - Q|.
  double bellman_residual(double gamma) const;
};

/// Enumerates everything reachable from `seeds` (goal states absorb), then
/// runs synchronous sweeps Q(s,a) <- R + gamma max Q(s',.) until the largest
/// change drops below `tol`. Throws DomainError when more than `max_states`
/// states are reachable or the sweeps do not converge.
TabularQ tabular_value_iteration(const domains::Domain& domain, std::span<const logic::State> seeds, double gamma,
                                 double tol = 1e-9, std::size_t max_states = 200'000,
                                 int max_sweeps = 1'000'000);

}  // namespace rfq::harness
