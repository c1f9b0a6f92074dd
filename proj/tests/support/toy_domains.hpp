#pragma once

// Tiny hand-checkable MDPs.

#include <string>

#include "rfq/domains/domain.hpp"
#include "rfq/error.hpp"
#include "rfq/logic/mode.hpp"

namespace rfq::testkit {

/// Positions p0..p<length>; the single action go(p_k) moves to p_{k+1}.
/// Reaching p<length> is the goal. With length 0 there is no goal and go(p0)
/// loops on p0 forever.
class ChainDomain final : public domains::Domain {
 public:
  ChainDomain(int length, double step_reward, double goal_reward);

  std::string_view name() const override { return "chain"; }
  const logic::LanguageBias& bias() const override { return bias_; }
  logic::State initial_state(const domains::ObjectCounts&, Rng&) const override { return at(0); }
  std::vector<logic::GroundAtom> legal_actions(const logic::State& state) const override;
  logic::State transition(const logic::State& state, const logic::GroundAtom& action) const override;
  double reward(const logic::State&, const logic::GroundAtom&, const logic::State& next) const override;
  bool is_goal(const logic::State& state) const override;
  double goal_reward() const override { return goal_reward_; }
  void check_invariants(const logic::State& state) const override;
  std::vector<logic::State> all_states(const domains::ObjectCounts&) const override;
  domains::ObjectCounts parse_counts(std::string_view) const override { return {}; }
  std::string format_counts(const domains::ObjectCounts&) const override { return "-"; }

  logic::State at(int k) const;

 private:
  int position(const logic::State& state) const;

  int length_;
  double step_reward_;
  double goal_reward_;
  logic::LanguageBias bias_;
};

}  // namespace rfq::testkit
