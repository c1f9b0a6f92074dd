#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rfq/domains/domain.hpp"

namespace rfq::domains {

/// Trucks carry boxes between fully connected cities; the goal is any box
/// unloaded in the destination city.
///
/// States hold city/1, destination/1, truckIn/2 and exactly one of
/// boxIn/2 or boxOn/2 per box. city/1 only lets the simulator recover the
/// city pool; it is not part of the learning vocabulary.
class Logistics final : public Domain {
 public:
  Logistics();

  std::string_view name() const override { return "logistics"; }
  const logic::LanguageBias& bias() const override { return bias_; }
  logic::State initial_state(const ObjectCounts& counts, Rng& rng) const override;
  std::vector<logic::GroundAtom> legal_actions(const logic::State& state) const override;
  logic::State transition(const logic::State& state, const logic::GroundAtom& action) const override;
  double reward(const logic::State& state, const logic::GroundAtom& action, const logic::State& next) const override;
  bool is_goal(const logic::State& state) const override;
  double goal_reward() const override { return 1.0; }
  void check_invariants(const logic::State& state) const override;
  std::vector<logic::State> all_states(const ObjectCounts& counts) const override;
  /// Closed form: the cheapest box costs 1 (on a truck in the destination),
  /// 2 (on a truck elsewhere), 3 (in a city with a truck) or 4.
  std::optional<int> optimal_steps(const logic::State& state, std::size_t budget = 2'000'000) const override;
  ObjectCounts parse_counts(std::string_view text) const override;
  std::string format_counts(const ObjectCounts& counts) const override;

  struct Layout {
    std::vector<std::string> cities;
    std::string destination;
    std::vector<std::pair<std::string, std::string>> trucks;  // (truck, city)
    std::vector<std::pair<std::string, std::string>> boxes;   // (box, city or truck)
  };
  logic::State make_state(const Layout& layout) const;

  struct Config {
    std::vector<logic::Symbol> cities;
    std::vector<logic::Symbol> trucks;
    std::vector<logic::Symbol> boxes;
    int destination = 0;
    std::vector<int> truck_city;
    std::vector<int> box_at;  // city index, or -(truck + 1) when loaded
  };

 private:
  Config parse(const logic::State& state) const;
  logic::State build(const Config& config) const;
  static bool goal(const Config& config);

  logic::LanguageBias bias_;
};

}  // namespace rfq::domains
