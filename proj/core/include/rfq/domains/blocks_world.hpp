#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfq/domains/domain.hpp"

namespace rfq::domains {

enum class BlocksTask { Stack, Unstack, On };

/// Blocks world over blocks b1..bn and a distinguished `floor` constant.
///
/// States hold on/2, clear/1 and isFloor/1 facts (clear(floor) always
/// holds), plus derived facts: heightlessthan/2 for Stack and Unstack,
/// sametower/2 and goalon/2 for On. goalon(x, y) asks for y directly on x.
class BlocksWorld final : public Domain {
 public:
  BlocksWorld(BlocksTask task, const DomainOptions& options);

  BlocksTask task() const noexcept { return task_; }

  std::string_view name() const override;
  const logic::LanguageBias& bias() const override { return bias_; }
  logic::State initial_state(const ObjectCounts& counts, Rng& rng) const override;
  std::vector<logic::GroundAtom> legal_actions(const logic::State& state) const override;
  logic::State transition(const logic::State& state, const logic::GroundAtom& action) const override;
  double reward(const logic::State& state, const logic::GroundAtom& action, const logic::State& next) const override;
  bool is_goal(const logic::State& state) const override;
  double goal_reward() const override;
  void check_invariants(const logic::State& state) const override;
  std::vector<logic::State> all_states(const ObjectCounts& counts) const override;
  std::optional<int> optimal_steps(const logic::State& state, std::size_t budget = 2'000'000) const override;
  ObjectCounts parse_counts(std::string_view text) const override;
  std::string format_counts(const ObjectCounts& counts) const override;

  /// Builds a state from towers listed bottom to top, e.g. {{"b1","b2"},{"b3"}}.
  /// On needs `goal` = (x, y), meaning y should end up directly on x.
  logic::State make_state(const std::vector<std::vector<std::string>>& towers,
                          const std::optional<std::pair<std::string, std::string>>& goal = std::nullopt) const;

  /// Tower heights of a state, sorted descending.
  std::vector<int> tower_heights(const logic::State& state) const;

  struct Config {
    std::vector<logic::Symbol> names;
    std::vector<int> below;  // block index, or kFloor
    int goal_bottom = -1;
    int goal_top = -1;
  };
  static constexpr int kFloor = -1;

 private:
  Config parse(const logic::State& state) const;
  logic::State build(const Config& config) const;
  bool goal(const Config& config) const;

  BlocksTask task_;
  DomainOptions options_;
  logic::LanguageBias bias_;
};

}  // namespace rfq::domains
