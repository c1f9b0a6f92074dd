#include "rfq/boosting/boosted_model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"
#include "rfq/rrt/learner.hpp"

namespace rfq::boosting {

using logic::Predicate;
using rrt::RegExample;
using rrt::RelationalTree;

void BoostedModel::add_tree(RelationalTree tree) {
  auto it = std::ranges::find_if(actions_, [&](const ActionTrees& a) { return a.action == tree.action_type(); });
  if (it == actions_.end()) {
    actions_.push_back(ActionTrees{tree.action_type(), {}});
    it = std::prev(actions_.end());
  }
  it->trees.push_back(std::move(tree));
}

std::span<const RelationalTree> BoostedModel::trees_for(const Predicate& action) const {
  for (const auto& a : actions_) {
    if (a.action == action) {
      return a.trees;
    }
  }
  return {};
}

double BoostedModel::predict(const logic::State& state, const logic::GroundAtom& action) const {
  double sum = 0.0;
  for (const auto& tree : trees_for(action.predicate)) {
    sum += tree.predict(state, action);
  }
  return sum;
}

std::size_t BoostedModel::tree_count() const noexcept {
  std::size_t n = 0;
  for (const auto& a : actions_) {
    n += a.trees.size();
  }
  return n;
}

bool operator==(const BoostedModel& a, const BoostedModel& b) {
  if (a.actions_.size() != b.actions_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.actions_.size(); ++i) {
    if (!(a.actions_[i].action == b.actions_[i].action) || a.actions_[i].trees != b.actions_[i].trees) {
      return false;
    }
  }
  return true;
}

std::vector<GradientExample> gen_gradients(std::span<const RegExample> examples, const BoostedModel& model) {
  std::vector<GradientExample> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    out.push_back(GradientExample{ex.state, ex.action, ex.target - model.predict(ex.state, ex.action)});
  }
  return out;
}

BoostedModel tree_boost(std::span<const RegExample> examples, int stages, const logic::LanguageBias& bias,
                        const rrt::TreeParams& params) {
  if (stages < 1) {
    throw ConfigError("boosting needs at least one stage");
  }
  // Partition by action type, keeping the bias's declaration order.
  std::vector<std::vector<RegExample>> parts;
  std::vector<Predicate> order;
  for (const auto& ex : examples) {
    auto it = std::ranges::find(order, ex.action.predicate);
    if (it == order.end()) {
      order.push_back(ex.action.predicate);
      parts.emplace_back();
      it = std::prev(order.end());
    }
    parts[static_cast<std::size_t>(it - order.begin())].push_back(ex);
  }
  std::vector<std::size_t> permutation(order.size());
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    permutation[i] = i;
  }
  auto rank = [&](const Predicate& p) {
    auto it = std::ranges::find_if(bias.actions, [&](const logic::ActionSignature& a) { return a.predicate == p; });
    return static_cast<std::size_t>(it - bias.actions.begin());
  };
  std::ranges::stable_sort(permutation, [&](std::size_t a, std::size_t b) { return rank(order[a]) < rank(order[b]); });

  BoostedModel model;
  for (std::size_t p : permutation) {
    auto& part = parts[p];
    std::vector<double> targets;
    targets.reserve(part.size());
    for (const auto& ex : part) {
      targets.push_back(ex.target);
    }
    rrt::SplitCache cache(part.size());
    std::vector<double> fitted(part.size(), 0.0);
    for (int m = 0; m < stages; ++m) {
      for (std::size_t k = 0; k < part.size(); ++k) {
        part[k].target = targets[k] - fitted[k];
      }
      RelationalTree tree = rrt::learn_tree(part, bias, params, &cache);
      for (std::size_t k = 0; k < part.size(); ++k) {
        fitted[k] += tree.predict(part[k].state, part[k].action);
      }
      model.add_tree(std::move(tree));
    }
  }
  return model;
}

void write_model(std::ostream& out, const BoostedModel& model) {
  out << "model " << model.actions().size() << '\n';
  for (const auto& a : model.actions()) {
    out << "action " << logic::to_string(a.action) << " trees " << a.trees.size() << '\n';
    for (const auto& tree : a.trees) {
      rrt::write_tree(out, tree);
    }
  }
}

namespace {

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!logic::trim(line).empty()) {
      return line;
    }
  }
  throw ParseError("unexpected end of model");
}

}  // namespace

BoostedModel read_model(std::istream& in) {
  std::istringstream header(next_line(in));
  std::string word;
  std::size_t n_actions = 0;
  if (!(header >> word >> n_actions) || word != "model") {
    throw ParseError("expected 'model <count>'");
  }
  BoostedModel model;
  for (std::size_t a = 0; a < n_actions; ++a) {
    std::istringstream line(next_line(in));
    std::string action;
    std::string trees_word;
    std::size_t n_trees = 0;
    if (!(line >> word >> action >> trees_word >> n_trees) || word != "action" || trees_word != "trees") {
      throw ParseError("expected 'action <name>/<arity> trees <count>'");
    }
    for (std::size_t t = 0; t < n_trees; ++t) {
      auto tree = rrt::read_tree(in);
      if (logic::to_string(tree.action_type()) != action) {
        throw ParseError("tree for " + logic::to_string(tree.action_type()) + " listed under " + action);
      }
      model.add_tree(std::move(tree));
    }
  }
  return model;
}

}  // namespace rfq::boosting
