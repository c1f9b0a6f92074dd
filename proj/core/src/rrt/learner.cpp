#include "rfq/rrt/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfq/error.hpp"
#include "rfq/rrt/candidates.hpp"

namespace rfq::rrt {

using logic::Conjunction;
using logic::Symbol;

void TreeParams::validate() const {
  if (max_depth < 1) {
    throw ConfigError("tree max_depth must be >= 1");
  }
  if (min_leaf < 1) {
    throw ConfigError("tree min_leaf must be >= 1");
  }
  if (max_candidate_literals < 1) {
    throw ConfigError("tree max_candidate_literals must be >= 1");
  }
  if (!(min_variance_reduction >= 0.0)) {
    throw ConfigError("tree min_variance_reduction must be >= 0");
  }
}

double weighted_mean(std::span<const double> targets, std::span<const double> weights) {
  double w = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    w += weights[k];
    sum += weights[k] * targets[k];
  }
  return w > 0.0 ? sum / w : 0.0;
}

double weighted_variance(std::span<const double> targets, std::span<const double> weights) {
  double w = 0.0;
  for (double wk : weights) {
    w += wk;
  }
  if (w <= 0.0) {
    return 0.0;
  }
  const double mean = weighted_mean(targets, weights);
  double ss = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double d = targets[k] - mean;
    ss += weights[k] * d * d;
  }
  return ss / w;
}

namespace {

struct Moments {
  double weight = 0.0;
  double mean = 0.0;
  double m2 = 0.0;  // weighted sum of squared deviations

  // West's weighted incremental update.
  void add(double y, double w) {
    if (w <= 0.0) {
      return;
    }
    weight += w;
    const double delta = y - mean;
    mean += (w / weight) * delta;
    m2 += w * delta * (y - mean);
  }
  double variance() const { return weight > 0.0 ? std::max(0.0, m2 / weight) : 0.0; }
};

}  // namespace

SplitScore score_partition(std::span<const double> targets, std::span<const double> weights,
                           std::span<const char> satisfied, double min_leaf) {
  Moments all;
  Moments yes;
  Moments no;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    all.add(targets[k], weights[k]);
    (satisfied[k] ? yes : no).add(targets[k], weights[k]);
  }
  SplitScore score;
  score.weight_satisfied = yes.weight;
  score.weight_failed = no.weight;
  score.valid = yes.weight >= min_leaf && no.weight >= min_leaf;
  if (all.weight <= 0.0) {
    return score;
  }
  score.reduction =
      all.variance() - (yes.weight / all.weight) * yes.variance() - (no.weight / all.weight) * no.variance();
  return score;
}

SplitScore score_split(std::span<const RegExample> examples, const Conjunction& test, double min_leaf) {
  if (examples.empty()) {
    throw std::invalid_argument("score_split needs at least one example");
  }
  std::vector<double> targets;
  std::vector<double> weights;
  std::vector<char> mask;
  std::vector<Symbol> vars;
  for (std::size_t i = 0; i < examples.front().action.predicate.arity; ++i) {
    vars.push_back(logic::action_variable(i));
  }
  for (const auto& ex : examples) {
    targets.push_back(ex.target);
    weights.push_back(ex.weight);
    mask.push_back(logic::satisfies(test, ex.state, ex.action, vars).has_value() ? 1 : 0);
  }
  return score_partition(targets, weights, mask, min_leaf);
}

std::vector<std::int8_t>& SplitCache::outcomes(const std::string& key) {
  auto [it, inserted] = entries_.try_emplace(key);
  if (inserted) {
    it->second.assign(example_count_, -1);
  }
  return it->second;
}

namespace {

// Examples reaching a node together with every binding of the node's
// context variables that satisfies the positive path (row-major, one row per
// binding, row width = context size).
struct NodeData {
  std::vector<std::uint32_t> members;
  std::vector<std::vector<Symbol>> rows;
};

class TreeBuilder {
 public:
  TreeBuilder(std::span<const RegExample> examples, const logic::LanguageBias& bias, const TreeParams& params,
              SplitCache* cache)
      : examples_(examples), bias_(bias), params_(params), cache_(cache) {}

  RelationalTree run() {
    const auto& action = bias_.action(examples_.front().action.predicate);
    const auto context = action_context(action);
    NodeData root;
    for (std::uint32_t k = 0; k < examples_.size(); ++k) {
      if (!(examples_[k].action.predicate == action.predicate)) {
        throw BiasError("learn_tree examples mix action types");
      }
      root.members.push_back(k);
      const auto args = examples_[k].action.arguments();
      root.rows.emplace_back(args.begin(), args.end());
    }
    build(std::move(root), context, Conjunction{}, 0);
    return RelationalTree(action.predicate, std::move(nodes_));
  }

 private:
  std::int32_t build(NodeData data, const std::vector<TypedVariable>& context, const Conjunction& path, int depth) {
    const auto index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();

    std::vector<double> targets;
    std::vector<double> weights;
    targets.reserve(data.members.size());
    weights.reserve(data.members.size());
    for (auto k : data.members) {
      targets.push_back(examples_[k].target);
      weights.push_back(examples_[k].weight);
    }
    auto make_leaf = [&] {
      nodes_[index].value = weighted_mean(targets, weights);
      nodes_[index].count = data.members.size();
      return index;
    };

    const auto n = data.members.size();
    if (depth >= params_.max_depth || n < 2 * static_cast<std::size_t>(params_.min_leaf) ||
        weighted_variance(targets, weights) <= 0.0) {
      return make_leaf();
    }

    std::vector<Symbol> context_vars;
    for (const auto& v : context) {
      context_vars.push_back(v.variable);
    }
    const auto candidates =
        generate_candidates(context, bias_, static_cast<std::size_t>(params_.max_candidate_literals));
    const std::string path_key = logic::to_string(path) + " | ";

    std::vector<char> mask(n);
    std::vector<char> best_mask;
    const SplitTest* best = nullptr;
    double best_reduction = 0.0;
    for (const auto& cand : candidates) {
      const logic::Query query(cand.conjunction, context_vars);
      std::vector<std::int8_t>* memo = cache_ ? &cache_->outcomes(path_key + logic::to_string(cand.conjunction)) : nullptr;
      std::size_t n_yes = 0;
      for (std::size_t m = 0; m < n; ++m) {
        const auto k = data.members[m];
        if (memo && (*memo)[k] >= 0) {
          mask[m] = static_cast<char>((*memo)[k]);
        } else {
          mask[m] = satisfied_by_any(query, examples_[k].state, data.rows[m], context_vars.size()) ? 1 : 0;
          if (memo) {
            (*memo)[k] = static_cast<std::int8_t>(mask[m]);
          }
        }
        n_yes += static_cast<std::size_t>(mask[m]);
      }
      const auto min_count = static_cast<std::size_t>(params_.min_leaf);
      if (n_yes < min_count || n - n_yes < min_count) {
        continue;
      }
      const auto score = score_partition(targets, weights, mask, params_.min_leaf);
      if (score.valid && score.reduction > best_reduction) {
        best_reduction = score.reduction;
        best = &cand;
        best_mask = mask;
      }
    }
    if (best == nullptr || best_reduction < params_.min_variance_reduction) {
      return make_leaf();
    }

    const logic::Query query(best->conjunction, context_vars);
    std::vector<TypedVariable> child_context = context;
    for (std::size_t v = context.size(); v < query.variables().size(); ++v) {
      const Symbol var = query.variables()[v];
      auto typed = std::ranges::find_if(best->introduced, [&](const TypedVariable& t) { return t.variable == var; });
      child_context.push_back({var, typed == best->introduced.end() ? Symbol{} : typed->type});
    }

    NodeData yes;
    NodeData no;
    for (std::size_t m = 0; m < n; ++m) {
      if (!best_mask[m]) {
        no.members.push_back(data.members[m]);
        no.rows.push_back(std::move(data.rows[m]));
        continue;
      }
      yes.members.push_back(data.members[m]);
      yes.rows.push_back(extend_rows(query, examples_[data.members[m]].state, data.rows[m], context_vars.size()));
    }

    nodes_[index].test = best->conjunction;
    const Conjunction child_path = path + best->conjunction;
    const auto satisfied = build(std::move(yes), child_context, child_path, depth + 1);
    const auto failed = build(std::move(no), context, path, depth + 1);
    nodes_[index].satisfied = satisfied;
    nodes_[index].failed = failed;
    return index;
  }

  static bool satisfied_by_any(const logic::Query& query, const logic::State& state, const std::vector<Symbol>& rows,
                               std::size_t width) {
    for (std::size_t r = 0; r + width <= rows.size(); r += width) {
      if (query.holds(state, std::span<const Symbol>(rows.data() + r, width))) {
        return true;
      }
      if (width == 0) {
        break;
      }
    }
    return false;
  }

  static std::vector<Symbol> extend_rows(const logic::Query& query, const logic::State& state,
                                         const std::vector<Symbol>& rows, std::size_t width) {
    const std::size_t out_width = query.variables().size();
    std::vector<Symbol> out;
    auto already_present = [&](std::span<const Symbol> row) {
      for (std::size_t r = 0; r < out.size(); r += out_width) {
        if (std::equal(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(r))) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t r = 0; r + width <= rows.size(); r += width) {
      query.enumerate(state, std::span<const Symbol>(rows.data() + r, width), [&](std::span<const Symbol> slots) {
        if (!already_present(slots)) {
          out.insert(out.end(), slots.begin(), slots.end());
        }
        return true;
      });
      if (width == 0) {
        break;
      }
    }
    return out;
  }

  std::span<const RegExample> examples_;
  const logic::LanguageBias& bias_;
  const TreeParams& params_;
  SplitCache* cache_;
  std::vector<RelationalTree::Node> nodes_;
};

}  // namespace

RelationalTree learn_tree(std::span<const RegExample> examples, const logic::LanguageBias& bias,
                          const TreeParams& params, SplitCache* cache) {
  if (examples.empty()) {
    throw std::invalid_argument("learn_tree needs at least one example");
  }
  params.validate();
  if (cache && cache->example_count() != examples.size()) {
    throw std::invalid_argument("split cache was built for a different example list");
  }
  return TreeBuilder(examples, bias, params, cache).run();
}

}  // namespace rfq::rrt
