#include "rfq/rrt/tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "rfq/error.hpp"
#include "rfq/logic/mode.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"

namespace rfq::rrt {

using logic::Conjunction;
using logic::Predicate;

RelationalTree::RelationalTree(Predicate action_type, std::vector<Node> nodes)
    : action_type_(action_type), nodes_(std::move(nodes)) {
  if (nodes_.empty()) {
    throw BiasError("a tree needs at least one node");
  }
  for (std::size_t i = 0; i < action_type_.arity; ++i) {
    action_variables_.push_back(logic::action_variable(i));
  }
  paths_.resize(nodes_.size());
  queries_.resize(nodes_.size());

  std::vector<char> reached(nodes_.size(), 0);
  std::vector<std::size_t> stack{0};
  reached[0] = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const Node& node = nodes_[i];
    if (node.is_leaf()) {
      continue;
    }
    for (auto child : {node.satisfied, node.failed}) {
      if (child <= 0 || static_cast<std::size_t>(child) >= nodes_.size() || reached[child]) {
        throw BiasError("malformed tree: bad child index");
      }
      reached[child] = 1;
      stack.push_back(static_cast<std::size_t>(child));
    }
    const Conjunction full = paths_[i] + node.test;
    queries_[i] = logic::Query(full, action_variables_);
    paths_[node.satisfied] = full;
    paths_[node.failed] = paths_[i];
  }
  if (std::ranges::find(reached, 0) != reached.end()) {
    throw BiasError("malformed tree: unreachable node");
  }
}

RelationalTree RelationalTree::leaf(Predicate action_type, double value, std::size_t count) {
  Node n;
  n.value = value;
  n.count = count;
  return RelationalTree(action_type, {n});
}

std::size_t RelationalTree::route(const logic::State& state, const logic::GroundAtom& action) const {
  if (!(action.predicate == action_type_)) {
    throw BiasError("tree for " + logic::to_string(action_type_) + " asked about " + logic::to_string(action));
  }
  const auto args = action.arguments();
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const Node& node = nodes_[i];
    i = static_cast<std::size_t>(queries_[i].holds(state, args) ? node.satisfied : node.failed);
  }
  return i;
}

std::size_t RelationalTree::depth() const {
  std::size_t deepest = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (!nodes_[i].is_leaf()) {
      stack.emplace_back(nodes_[i].satisfied, d + 1);
      stack.emplace_back(nodes_[i].failed, d + 1);
    }
  }
  return deepest;
}

std::size_t RelationalTree::leaf_count() const {
  return static_cast<std::size_t>(std::ranges::count_if(nodes_, [](const Node& n) { return n.is_leaf(); }));
}

namespace {

void write_node(std::ostream& out, const RelationalTree& tree, std::size_t index, std::size_t indent) {
  const auto& node = tree.nodes()[index];
  out << std::string(indent * 2, ' ');
  if (node.is_leaf()) {
    out << "leaf: " << format_double(node.value) << " n=" << node.count << '\n';
    return;
  }
  out << "split: " << logic::to_string(node.test) << '\n';
  write_node(out, tree, static_cast<std::size_t>(node.satisfied), indent + 1);
  write_node(out, tree, static_cast<std::size_t>(node.failed), indent + 1);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!logic::trim(line).empty()) {
        return line;
      }
    }
    throw ParseError("unexpected end of tree");
  }

 private:
  std::istream& in_;
};

std::int32_t read_node(LineReader& reader, std::size_t indent, std::vector<RelationalTree::Node>& nodes) {
  const std::string line = reader.next();
  const auto lead = line.find_first_not_of(' ');
  if (lead != indent * 2) {
    throw ParseError("bad indentation in tree line: '" + line + "'");
  }
  std::string_view body = std::string_view(line).substr(lead);
  const auto index = static_cast<std::int32_t>(nodes.size());
  nodes.emplace_back();
  if (body.starts_with("leaf:")) {
    body.remove_prefix(5);
    const auto n_at = body.find(" n=");
    if (n_at == std::string_view::npos) {
      throw ParseError("leaf without count: '" + line + "'");
    }
    nodes[index].value = parse_double(body.substr(0, n_at));
    nodes[index].count = static_cast<std::size_t>(parse_int(body.substr(n_at + 3)));
    return index;
  }
  if (!body.starts_with("split:")) {
    throw ParseError("expected 'split:' or 'leaf:' in: '" + line + "'");
  }
  nodes[index].test = logic::parse_conjunction(body.substr(6));
  const auto yes = read_node(reader, indent + 1, nodes);
  const auto no = read_node(reader, indent + 1, nodes);
  nodes[index].satisfied = yes;
  nodes[index].failed = no;
  return index;
}

}  // namespace

void write_tree(std::ostream& out, const RelationalTree& tree) {
  out << "tree " << logic::to_string(tree.action_type()) << '\n';
  write_node(out, tree, 0, 0);
}

std::string format_tree(const RelationalTree& tree) {
  std::ostringstream out;
  write_tree(out, tree);
  return out.str();
}

RelationalTree read_tree(std::istream& in) {
  LineReader reader(in);
  const std::string header = reader.next();
  std::string_view h = logic::trim(header);
  if (!h.starts_with("tree ")) {
    throw ParseError("expected 'tree <action>/<arity>', got: '" + header + "'");
  }
  h.remove_prefix(5);
  const auto slash = h.rfind('/');
  if (slash == std::string_view::npos) {
    throw ParseError("expected 'tree <action>/<arity>', got: '" + header + "'");
  }
  const auto action = Predicate::make(logic::trim(h.substr(0, slash)), static_cast<std::size_t>(parse_int(h.substr(slash + 1))));
  std::vector<RelationalTree::Node> nodes;
  read_node(reader, 0, nodes);
  return RelationalTree(action, std::move(nodes));
}

RelationalTree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_tree(in);
}

}  // namespace rfq::rrt
