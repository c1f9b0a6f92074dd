#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/mode.hpp"
#include "rfq/logic/state.hpp"
#include "rfq/random.hpp"

namespace rfq::domains {

/// Object counts for one problem instance. Blocks-world tasks use `blocks`;
/// logistics uses cities/trucks/boxes.
struct ObjectCounts {
  int blocks = 0;
  int cities = 0;
  int trucks = 0;
  int boxes = 0;

  friend bool operator==(const ObjectCounts&, const ObjectCounts&) = default;
};

struct StepResult {
  logic::State next;
  double reward = 0.0;
  bool terminal = false;
};

struct DomainOptions {
  /// ON task: penalty for moving a block out of a tower holding a goal block.
  double on_base_penalty = 0.05;
  /// ON task: penalty for moving a block out of any other tower.
  double on_offtower_penalty = 0.2;
};

/// Relational MDP simulator. All object pools are recovered from the state,
/// so one Domain serves instances of any size. Implementations are
/// immutable; every member function is safe to call concurrently.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::string_view name() const = 0;
  virtual const logic::LanguageBias& bias() const = 0;

  /// Uniform draw from the task's start distribution; never a goal state.
  virtual logic::State initial_state(const ObjectCounts& counts, Rng& rng) const = 0;

  /// Legal ground actions sorted by lexicographic_less. Empty for goal states.
  virtual std::vector<logic::GroundAtom> legal_actions(const logic::State& state) const = 0;

  /// Deterministic successor. Throws DomainError for an illegal action.
  virtual logic::State transition(const logic::State& state, const logic::GroundAtom& action) const = 0;

  virtual double reward(const logic::State& state, const logic::GroundAtom& action,
                        const logic::State& next) const = 0;

  virtual bool is_goal(const logic::State& state) const = 0;
  virtual double goal_reward() const = 0;

  /// Throws DomainError when the state breaks a structural invariant.
  virtual void check_invariants(const logic::State& state) const = 0;

  /// Every state of an instance with these counts (tiny instances only).
  virtual std::vector<logic::State> all_states(const ObjectCounts& counts) const = 0;

  /// Fewest actions from `state` to a goal; nullopt when the search expands
  /// more than `budget` states. The default runs breadth-first search over
  /// fact sets.
  virtual std::optional<int> optimal_steps(const logic::State& state, std::size_t budget = 2'000'000) const;

  /// "3" for blocks-world tasks, "cities:trucks:boxes" for logistics.
  virtual ObjectCounts parse_counts(std::string_view text) const = 0;
  virtual std::string format_counts(const ObjectCounts& counts) const = 0;

  StepResult step(const logic::State& state, const logic::GroundAtom& action) const;
};

/// "stack", "unstack", "on" or "logistics". Throws ConfigError otherwise.
std::unique_ptr<Domain> make_domain(std::string_view task, const DomainOptions& options = {});

std::vector<std::string> domain_names();

/// Breadth-first distance to the nearest goal over legal actions, with goal
/// states treated as absorbing. nullopt when more than `budget` states get
/// expanded.
std::optional<int> bfs_optimal_steps(const Domain& domain, const logic::State& start, std::size_t budget);

}  // namespace rfq::domains
