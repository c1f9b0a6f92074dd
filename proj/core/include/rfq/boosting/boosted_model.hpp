#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rfq/logic/mode.hpp"
#include "rfq/rrt/example.hpp"
#include "rfq/rrt/tree.hpp"

namespace rfq::boosting {

/// Ordered tree lists per lifted action type, evaluated by summation. An
/// action type without trees predicts 0.
class BoostedModel {
 public:
  struct ActionTrees {
    logic::Predicate action;
    std::vector<rrt::RelationalTree> trees;
  };

  BoostedModel() = default;

  void add_tree(rrt::RelationalTree tree);

  double predict(const logic::State& state, const logic::GroundAtom& action) const;

  /// Trees for one action type; empty when unseen.
  std::span<const rrt::RelationalTree> trees_for(const logic::Predicate& action) const;

  std::span<const ActionTrees> actions() const noexcept { return actions_; }
  std::size_t tree_count() const noexcept;
  bool empty() const noexcept { return actions_.empty(); }

  friend bool operator==(const BoostedModel& a, const BoostedModel& b);

 private:
  std::vector<ActionTrees> actions_;  // first-seen order
};

struct GradientExample {
  logic::State state;
  logic::GroundAtom action;
  double residual = 0.0;
};

/// residual_k = target_k - model(s_k, a_k).
std::vector<GradientExample> gen_gradients(std::span<const rrt::RegExample> examples, const BoostedModel& model);

/// Fits F_0 to the raw targets, then `stages - 1` trees to the running
/// residuals, separately for each action type present in `examples`. Trees
/// are added unscaled. Throws ConfigError when stages < 1.
BoostedModel tree_boost(std::span<const rrt::RegExample> examples, int stages, const logic::LanguageBias& bias,
                        const rrt::TreeParams& params);

/// Text form:
///
///   model <action-type-count>
///   action move/2 trees 5
///   tree move/2
///   ...
///
/// Reading it back reproduces every prediction bit for bit.
void write_model(std::ostream& out, const BoostedModel& model);
BoostedModel read_model(std::istream& in);

}  // namespace rfq::boosting
