#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/query.hpp"
#include "rfq/logic/state.hpp"

namespace rfq::rrt {

/// Relational regression tree for one lifted action type.
///
/// Inner nodes hold a conjunction; the satisfied child sees the variables the
/// conjunction binds, the failed child does not. A (state, action) pair
/// follows the satisfied branch when the conjunction of all satisfied tests on
/// the path so far plus the node test has some binding, with the action
/// arguments bound to the canonical variables A, B, ...
class RelationalTree {
 public:
  struct Node {
    logic::Conjunction test;
    std::int32_t satisfied = -1;
    std::int32_t failed = -1;
    double value = 0.0;
    std::size_t count = 0;

    bool is_leaf() const noexcept { return satisfied < 0; }

    friend bool operator==(const Node&, const Node&) = default;
  };

  /// `nodes[0]` is the root. Throws BiasError on dangling or shared children.
  RelationalTree(logic::Predicate action_type, std::vector<Node> nodes);

  static RelationalTree leaf(logic::Predicate action_type, double value, std::size_t count = 0);

  const logic::Predicate& action_type() const noexcept { return action_type_; }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const logic::Symbol> action_variables() const noexcept { return action_variables_; }

  /// Index of the leaf reached by (state, action). Throws BiasError when the
  /// action is not of this tree's type.
  std::size_t route(const logic::State& state, const logic::GroundAtom& action) const;

  double predict(const logic::State& state, const logic::GroundAtom& action) const {
    return nodes_[route(state, action)].value;
  }

  /// Number of split levels on the longest root-to-leaf path.
  std::size_t depth() const;
  std::size_t leaf_count() const;

  /// Positive path conjunction leading into each node (empty for the root).
  const logic::Conjunction& path_to(std::size_t node) const { return paths_[node]; }

  friend bool operator==(const RelationalTree& a, const RelationalTree& b) {
    return a.action_type_ == b.action_type_ && a.nodes_ == b.nodes_;
  }

 private:
  logic::Predicate action_type_;
  std::vector<logic::Symbol> action_variables_;
  std::vector<Node> nodes_;
  std::vector<logic::Conjunction> paths_;
  std::vector<logic::Query> queries_;  // path + test, one per inner node
};

/// Indented text form, one node per line, satisfied child first:
///
///   tree move/2
///   split: on(A,V2), clear(V2)
///     leaf: 1.5 n=4
///     leaf: -0.25 n=7
///
/// Leaf values use the shortest round-trip decimal form, so parsing the
/// output reproduces the tree exactly.
void write_tree(std::ostream& out, const RelationalTree& tree);
std::string format_tree(const RelationalTree& tree);

/// Reads exactly one tree (header plus its nodes). Throws ParseError.
RelationalTree read_tree(std::istream& in);
RelationalTree parse_tree(std::string_view text);

}  // namespace rfq::rrt
