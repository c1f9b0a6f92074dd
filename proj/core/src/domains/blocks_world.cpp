#include "rfq/domains/blocks_world.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "bias_util.hpp"
#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"

namespace rfq::domains {

using logic::GroundAtom;
using logic::Predicate;
using logic::State;
using logic::Symbol;

namespace {

struct Vocab {
  Predicate on = Predicate::make("on", 2);
  Predicate clear = Predicate::make("clear", 1);
  Predicate is_floor = Predicate::make("isFloor", 1);
  Predicate heightlessthan = Predicate::make("heightlessthan", 2);
  Predicate sametower = Predicate::make("sametower", 2);
  Predicate goalon = Predicate::make("goalon", 2);
  Predicate move = Predicate::make("move", 2);
  Symbol floor = Symbol::intern("floor");
  Symbol block = Symbol::intern("block");
};

const Vocab& vocab() {
  static const Vocab v;
  return v;
}

using Config = BlocksWorld::Config;
constexpr int kFloor = BlocksWorld::kFloor;

int block_count(const Config& c) { return static_cast<int>(c.names.size()); }

/// above[i] = block resting on i, or -1.
std::vector<int> above_of(const Config& c) {
  std::vector<int> above(c.names.size(), -1);
  for (int i = 0; i < block_count(c); ++i) {
    if (c.below[i] != kFloor) {
      above[c.below[i]] = i;
    }
  }
  return above;
}

/// Towers bottom to top, ordered by the index of their bottom block.
std::vector<std::vector<int>> towers_of(const Config& c) {
  auto above = above_of(c);
  std::vector<std::vector<int>> towers;
  for (int i = 0; i < block_count(c); ++i) {
    if (c.below[i] != kFloor) {
      continue;
    }
    auto& t = towers.emplace_back();
    for (int b = i; b != -1; b = above[b]) {
      t.push_back(b);
    }
  }
  return towers;
}

/// Index of the tower holding each block, in towers_of order.
std::vector<int> tower_index(const std::vector<std::vector<int>>& towers, std::size_t n) {
  std::vector<int> out(n, -1);
  for (std::size_t t = 0; t < towers.size(); ++t) {
    for (int b : towers[t]) {
      out[b] = static_cast<int>(t);
    }
  }
  return out;
}

void check_forest(const Config& c) {
  const int n = block_count(c);
  std::vector<int> supported(c.names.size(), 0);
  for (int i = 0; i < n; ++i) {
    int s = c.below[i];
    if (s == i) {
      throw DomainError("block " + std::string(c.names[i].name()) + " rests on itself");
    }
    if (s != kFloor && ++supported[s] > 1) {
      throw DomainError("two blocks rest on " + std::string(c.names[s].name()));
    }
  }
  for (int i = 0; i < n; ++i) {
    int b = i;
    for (int steps = 0; b != kFloor; ++steps) {
      if (steps > n) {
        throw DomainError("cycle through block " + std::string(c.names[i].name()));
      }
      b = c.below[b];
    }
  }
}

std::string canonical_key(const Config& c, bool label_goal) {
  std::vector<std::string> parts;
  for (const auto& tower : towers_of(c)) {
    std::string s;
    for (int b : tower) {
      s += !label_goal ? 'o' : b == c.goal_bottom ? 'x' : b == c.goal_top ? 'y' : 'o';
    }
    parts.push_back(std::move(s));
  }
  std::ranges::sort(parts);
  std::string key;
  for (const auto& p : parts) {
    key += p;
    key += '|';
  }
  return key;
}

}  // namespace

BlocksWorld::BlocksWorld(BlocksTask task, const DomainOptions& options) : task_(task), options_(options) {
  if (task == BlocksTask::On) {
    if (!(options.on_offtower_penalty > options.on_base_penalty && options.on_base_penalty > 0.0)) {
      throw ConfigError("on task needs 0 < on_base_penalty < on_offtower_penalty");
    }
    bias_ = detail::make_bias({"clear(+block)", "on(-block,-block)", "sametower(-block,-block)", "isFloor(+block)",
                               "goalon(-block,-block)"});
  } else {
    bias_ = detail::make_bias({"clear(+block)", "on(-block,-block)", "heightlessthan(-block,-block)",
                               "isFloor(+block)"});
  }
  bias_.constants = {{vocab().block, vocab().floor}};
  bias_.actions = {detail::make_action("move", {"block", "block"})};
  bias_.validate();
}

std::string_view BlocksWorld::name() const {
  switch (task_) {
    case BlocksTask::Stack:
      return "stack";
    case BlocksTask::Unstack:
      return "unstack";
    case BlocksTask::On:
      return "on";
  }
  return "";
}

double BlocksWorld::goal_reward() const { return task_ == BlocksTask::Stack ? 2.0 : 10.0; }

Config BlocksWorld::parse(const State& state) const {
  const auto& v = vocab();
  Config c;
  auto facts = state.facts();
  auto on = state.positions_of(v.on);
  c.names.reserve(on.size());
  for (auto pos : on) {
    Symbol b = facts[pos].args[0];
    if (b == v.floor || std::ranges::find(c.names, b) != c.names.end()) {
      throw DomainError("block " + std::string(b.name()) + " has more than one support");
    }
    c.names.push_back(b);
  }
  auto index_of = [&](Symbol s) {
    auto it = std::ranges::find(c.names, s);
    if (it == c.names.end()) {
      throw DomainError("unknown block " + std::string(s.name()));
    }
    return static_cast<int>(it - c.names.begin());
  };
  c.below.reserve(on.size());
  for (auto pos : on) {
    Symbol s = facts[pos].args[1];
    c.below.push_back(s == v.floor ? kFloor : index_of(s));
  }
  auto goals = state.positions_of(v.goalon);
  if (task_ == BlocksTask::On) {
    if (goals.size() != 1) {
      throw DomainError("on task state needs exactly one goalon fact");
    }
    c.goal_bottom = index_of(facts[goals[0]].args[0]);
    c.goal_top = index_of(facts[goals[0]].args[1]);
    if (c.goal_bottom == c.goal_top) {
      throw DomainError("goalon needs two distinct blocks");
    }
  } else if (!goals.empty()) {
    throw DomainError("goalon fact outside the on task");
  }
  return c;
}

State BlocksWorld::build(const Config& c) const {
  const auto& v = vocab();
  const auto n = c.names.size();
  auto towers = towers_of(c);
  auto tower = tower_index(towers, n);
  auto above = above_of(c);
  std::vector<GroundAtom> facts;
  facts.reserve(3 + 2 * n + n * n);
  facts.emplace_back(v.is_floor, std::initializer_list<Symbol>{v.floor});
  facts.emplace_back(v.clear, std::initializer_list<Symbol>{v.floor});
  for (std::size_t i = 0; i < n; ++i) {
    facts.emplace_back(v.on, std::initializer_list<Symbol>{c.names[i], c.below[i] == kFloor ? v.floor : c.names[c.below[i]]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (above[i] == -1) {
      facts.emplace_back(v.clear, std::initializer_list<Symbol>{c.names[i]});
    }
  }
  if (task_ == BlocksTask::On) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && tower[i] == tower[j]) {
          facts.emplace_back(v.sametower, std::initializer_list<Symbol>{c.names[i], c.names[j]});
        }
      }
    }
    facts.emplace_back(v.goalon, std::initializer_list<Symbol>{c.names[c.goal_bottom], c.names[c.goal_top]});
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (towers[tower[i]].size() < towers[tower[j]].size()) {
          facts.emplace_back(v.heightlessthan, std::initializer_list<Symbol>{c.names[i], c.names[j]});
        }
      }
    }
  }
  return State(facts);
}

bool BlocksWorld::goal(const Config& c) const {
  switch (task_) {
    case BlocksTask::Stack:
      return std::ranges::count(c.below, kFloor) == 1;
    case BlocksTask::Unstack:
      return std::ranges::count(c.below, kFloor) == block_count(c);
    case BlocksTask::On:
      return c.below[c.goal_top] == c.goal_bottom;
  }
  return false;
}

bool BlocksWorld::is_goal(const State& state) const { return goal(parse(state)); }

void BlocksWorld::check_invariants(const State& state) const {
  Config c = parse(state);
  check_forest(c);
  if (!(build(c) == state)) {
    throw DomainError("derived facts disagree with the on/2 structure");
  }
}

std::vector<GroundAtom> BlocksWorld::legal_actions(const State& state) const {
  const auto& v = vocab();
  Config c = parse(state);
  std::vector<GroundAtom> out;
  if (goal(c)) {
    return out;
  }
  auto above = above_of(c);
  const int n = block_count(c);
  for (int b = 0; b < n; ++b) {
    if (above[b] != -1) {
      continue;
    }
    if (c.below[b] != kFloor) {
      out.emplace_back(v.move, std::initializer_list<Symbol>{c.names[b], v.floor});
    }
    for (int d = 0; d < n; ++d) {
      if (d != b && above[d] == -1) {
        out.emplace_back(v.move, std::initializer_list<Symbol>{c.names[b], c.names[d]});
      }
    }
  }
  std::ranges::sort(out, [](const GroundAtom& a, const GroundAtom& b) { return logic::lexicographic_less(a, b); });
  return out;
}

State BlocksWorld::transition(const State& state, const GroundAtom& action) const {
  const auto& v = vocab();
  if (!(action.predicate == v.move)) {
    throw DomainError("blocks world has no action " + logic::to_string(action));
  }
  Config c = parse(state);
  if (goal(c)) {
    throw DomainError("no actions apply in a goal state");
  }
  auto find = [&](Symbol s) {
    auto it = std::ranges::find(c.names, s);
    return it == c.names.end() ? -2 : static_cast<int>(it - c.names.begin());
  };
  const int b = find(action.args[0]);
  const int d = action.args[1] == v.floor ? kFloor : find(action.args[1]);
  auto above = above_of(c);
  bool legal = b >= 0 && d != -2 && d != b && above[b] == -1 &&
               (d == kFloor ? c.below[b] != kFloor : above[d] == -1);
  if (!legal) {
    throw DomainError("illegal action " + logic::to_string(action));
  }
  c.below[b] = d;
  return build(c);
}

double BlocksWorld::reward(const State& state, const GroundAtom& action, const State& next) const {
  Config after = parse(next);
  if (goal(after)) {
    return goal_reward();
  }
  switch (task_) {
    case BlocksTask::Stack: {
      std::size_t tallest = 0;
      for (const auto& t : towers_of(after)) {
        tallest = std::max(tallest, t.size());
      }
      return -1.0 / static_cast<double>(tallest);
    }
    case BlocksTask::Unstack: {
      auto on_floor = static_cast<double>(std::ranges::count(after.below, kFloor));
      return -(1.0 - on_floor / static_cast<double>(after.names.size()));
    }
    case BlocksTask::On: {
      Config before = parse(state);
      auto it = std::ranges::find(before.names, action.args[0]);
      if (it == before.names.end()) {
        throw DomainError("unknown block in " + logic::to_string(action));
      }
      auto towers = towers_of(before);
      const auto& source = towers[tower_index(towers, before.names.size())[it - before.names.begin()]];
      bool holds_goal_block = std::ranges::find(source, before.goal_bottom) != source.end() ||
                              std::ranges::find(source, before.goal_top) != source.end();
      return holds_goal_block ? -options_.on_base_penalty : -options_.on_offtower_penalty;
    }
  }
  return 0.0;
}

State BlocksWorld::initial_state(const ObjectCounts& counts, Rng& rng) const {
  const int n = counts.blocks;
  if (n < 2) {
    throw DomainError("blocks world needs at least 2 blocks");
  }
  Config c;
  for (int i = 1; i <= n; ++i) {
    c.names.push_back(Symbol::intern("b" + std::to_string(i)));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  for (;;) {
    if (task_ == BlocksTask::On) {
      c.goal_bottom = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n)));
      c.goal_top = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(n - 1)));
      if (c.goal_top >= c.goal_bottom) {
        ++c.goal_top;
      }
    }
    for (int i = 0; i < n; ++i) {
      order[i] = i;
    }
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[uniform_index(rng, i + 1)]);
    }
    // Place blocks one at a time onto the floor or a clear placed block.
    c.below.assign(static_cast<std::size_t>(n), kFloor);
    std::vector<int> clear;
    for (int b : order) {
      std::size_t pick = uniform_index(rng, clear.size() + 1);
      if (pick == 0) {
        c.below[b] = kFloor;
      } else {
        c.below[b] = clear[pick - 1];
        clear.erase(clear.begin() + static_cast<std::ptrdiff_t>(pick - 1));
      }
      clear.push_back(b);
    }
    if (!goal(c)) {
      return build(c);
    }
  }
}

std::vector<State> BlocksWorld::all_states(const ObjectCounts& counts) const {
  const int n = counts.blocks;
  if (n < 2 || n > 6) {
    throw DomainError("state enumeration supports 2 to 6 blocks");
  }
  Config c;
  for (int i = 1; i <= n; ++i) {
    c.names.push_back(Symbol::intern("b" + std::to_string(i)));
  }
  std::vector<Config> forests;
  c.below.assign(static_cast<std::size_t>(n), kFloor);
  // Odometer over supports in {floor, 0..n-1}.
  for (;;) {
    try {
      check_forest(c);
      forests.push_back(c);
    } catch (const DomainError&) {
    }
    int k = n - 1;
    while (k >= 0 && c.below[k] == n - 1) {
      c.below[k] = kFloor;
      --k;
    }
    if (k < 0) {
      break;
    }
    ++c.below[k];
  }
  std::vector<State> out;
  for (auto& f : forests) {
    if (task_ != BlocksTask::On) {
      out.push_back(build(f));
      continue;
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x != y) {
          f.goal_bottom = x;
          f.goal_top = y;
          out.push_back(build(f));
        }
      }
    }
  }
  return out;
}

std::optional<int> BlocksWorld::optimal_steps(const State& state, std::size_t budget) const {
  // Distances only depend on tower shapes (and where the goal blocks sit),
  // so the search runs over canonical keys instead of fact sets.
  const bool label = task_ == BlocksTask::On;
  Config start = parse(state);
  if (goal(start)) {
    return 0;
  }
  std::unordered_set<std::string> seen{canonical_key(start, label)};
  std::deque<std::pair<Config, int>> frontier{{start, 0}};
  std::size_t expanded = 0;
  while (!frontier.empty()) {
    if (++expanded > budget) {
      return std::nullopt;
    }
    auto [c, d] = std::move(frontier.front());
    frontier.pop_front();
    auto above = above_of(c);
    const int n = block_count(c);
    for (int b = 0; b < n; ++b) {
      if (above[b] != -1) {
        continue;
      }
      for (int dest = kFloor; dest < n; ++dest) {
        if (dest == b || (dest == kFloor ? c.below[b] == kFloor : above[dest] != -1)) {
          continue;
        }
        Config next = c;
        next.below[b] = dest;
        if (goal(next)) {
          return d + 1;
        }
        if (seen.insert(canonical_key(next, label)).second) {
          frontier.emplace_back(std::move(next), d + 1);
        }
      }
    }
  }
  return std::nullopt;
}

ObjectCounts BlocksWorld::parse_counts(std::string_view text) const {
  long long n = parse_int(logic::trim(text));
  if (n < 2 || n > 64) {
    throw ConfigError("block count must be between 2 and 64, got " + std::string(text));
  }
  ObjectCounts c;
  c.blocks = static_cast<int>(n);
  return c;
}

std::string BlocksWorld::format_counts(const ObjectCounts& counts) const { return std::to_string(counts.blocks); }

State BlocksWorld::make_state(const std::vector<std::vector<std::string>>& towers,
                              const std::optional<std::pair<std::string, std::string>>& goal_pair) const {
  Config c;
  for (const auto& tower : towers) {
    if (tower.empty()) {
      throw DomainError("empty tower");
    }
    for (std::size_t k = 0; k < tower.size(); ++k) {
      Symbol s = Symbol::intern(tower[k]);
      if (s == vocab().floor || std::ranges::find(c.names, s) != c.names.end()) {
        throw DomainError("block " + tower[k] + " listed twice");
      }
      c.below.push_back(k == 0 ? kFloor : static_cast<int>(c.names.size()) - 1);
      c.names.push_back(s);
    }
  }
  if ((task_ == BlocksTask::On) != goal_pair.has_value()) {
    throw DomainError("a goal pair is required for the on task and only there");
  }
  if (goal_pair) {
    auto index_of = [&](const std::string& name) {
      auto it = std::ranges::find(c.names, Symbol::intern(name));
      if (it == c.names.end()) {
        throw DomainError("unknown goal block " + name);
      }
      return static_cast<int>(it - c.names.begin());
    };
    c.goal_bottom = index_of(goal_pair->first);
    c.goal_top = index_of(goal_pair->second);
    if (c.goal_bottom == c.goal_top) {
      throw DomainError("goal blocks must differ");
    }
  }
  return build(c);
}

std::vector<int> BlocksWorld::tower_heights(const State& state) const {
  std::vector<int> heights;
  for (const auto& t : towers_of(parse(state))) {
    heights.push_back(static_cast<int>(t.size()));
  }
  std::ranges::sort(heights, std::greater<>());
  return heights;
}

}  // namespace rfq::domains
