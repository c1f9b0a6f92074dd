#include "rfq/domains/logistics.hpp"

#include <algorithm>
#include <limits>

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
  Predicate city = Predicate::make("city", 1);
  Predicate destination = Predicate::make("destination", 1);
  Predicate truck_in = Predicate::make("truckIn", 2);
  Predicate box_in = Predicate::make("boxIn", 2);
  Predicate box_on = Predicate::make("boxOn", 2);
  Predicate load = Predicate::make("load", 2);
  Predicate unload = Predicate::make("unload", 2);
  Predicate move = Predicate::make("move", 2);
};

const Vocab& vocab() {
  static const Vocab v;
  return v;
}

using Config = Logistics::Config;

int index_in(const std::vector<Symbol>& pool, Symbol s) {
  auto it = std::ranges::find(pool, s);
  return it == pool.end() ? -1 : static_cast<int>(it - pool.begin());
}

std::vector<Symbol> numbered(std::string_view prefix, int n) {
  std::vector<Symbol> out;
  for (int i = 1; i <= n; ++i) {
    out.push_back(Symbol::intern(std::string(prefix) + std::to_string(i)));
  }
  return out;
}

void check_counts(const ObjectCounts& counts) {
  if (counts.cities < 2 || counts.trucks < 1 || counts.boxes < 1) {
    throw DomainError("logistics needs at least 2 cities, 1 truck and 1 box");
  }
}

}  // namespace

Logistics::Logistics() {
  bias_ = detail::make_bias(
      {"boxOn(-box,-truck)", "truckIn(-truck,-city)", "boxIn(-box,-city)", "destination(+city)"});
  bias_.actions = {detail::make_action("load", {"box", "truck"}), detail::make_action("unload", {"box", "truck"}),
                   detail::make_action("move", {"truck", "city"})};
  bias_.validate();
}

Config Logistics::parse(const State& state) const {
  const auto& v = vocab();
  Config c;
  auto facts = state.facts();
  for (auto pos : state.positions_of(v.city)) {
    c.cities.push_back(facts[pos].args[0]);
  }
  auto dest = state.positions_of(v.destination);
  if (dest.size() != 1) {
    throw DomainError("logistics state needs exactly one destination");
  }
  c.destination = index_in(c.cities, facts[dest[0]].args[0]);
  if (c.destination < 0) {
    throw DomainError("destination is not a city");
  }
  for (auto pos : state.positions_of(v.truck_in)) {
    const auto& f = facts[pos];
    if (index_in(c.trucks, f.args[0]) >= 0) {
      throw DomainError("truck " + std::string(f.args[0].name()) + " is in two cities");
    }
    int city = index_in(c.cities, f.args[1]);
    if (city < 0) {
      throw DomainError("unknown city " + std::string(f.args[1].name()));
    }
    c.trucks.push_back(f.args[0]);
    c.truck_city.push_back(city);
  }
  // Boxes in fact order, across both placement predicates.
  for (const auto& f : facts) {
    bool in = f.predicate == v.box_in;
    if (!in && !(f.predicate == v.box_on)) {
      continue;
    }
    if (index_in(c.boxes, f.args[0]) >= 0) {
      throw DomainError("box " + std::string(f.args[0].name()) + " has two placements");
    }
    int at = in ? index_in(c.cities, f.args[1]) : -(index_in(c.trucks, f.args[1]) + 1);
    if (at == -1 && in) {
      throw DomainError("unknown city " + std::string(f.args[1].name()));
    }
    if (at == 0 && !in) {
      throw DomainError("unknown truck " + std::string(f.args[1].name()));
    }
    c.boxes.push_back(f.args[0]);
    c.box_at.push_back(at);
  }
  return c;
}

State Logistics::build(const Config& c) const {
  const auto& v = vocab();
  std::vector<GroundAtom> facts;
  facts.reserve(c.cities.size() + 1 + c.trucks.size() + c.boxes.size());
  for (Symbol city : c.cities) {
    facts.emplace_back(v.city, std::initializer_list<Symbol>{city});
  }
  facts.emplace_back(v.destination, std::initializer_list<Symbol>{c.cities[c.destination]});
  for (std::size_t t = 0; t < c.trucks.size(); ++t) {
    facts.emplace_back(v.truck_in, std::initializer_list<Symbol>{c.trucks[t], c.cities[c.truck_city[t]]});
  }
  for (std::size_t b = 0; b < c.boxes.size(); ++b) {
    int at = c.box_at[b];
    if (at >= 0) {
      facts.emplace_back(v.box_in, std::initializer_list<Symbol>{c.boxes[b], c.cities[at]});
    } else {
      facts.emplace_back(v.box_on, std::initializer_list<Symbol>{c.boxes[b], c.trucks[-at - 1]});
    }
  }
  return State(facts);
}

bool Logistics::goal(const Config& c) { return std::ranges::find(c.box_at, c.destination) != c.box_at.end(); }

bool Logistics::is_goal(const State& state) const { return goal(parse(state)); }

void Logistics::check_invariants(const State& state) const {
  Config c = parse(state);
  if (c.trucks.empty() || c.boxes.empty()) {
    throw DomainError("logistics state without trucks or boxes");
  }
  if (!(build(c) == state)) {
    throw DomainError("logistics state holds facts outside its structure");
  }
}

std::vector<GroundAtom> Logistics::legal_actions(const State& state) const {
  const auto& v = vocab();
  Config c = parse(state);
  std::vector<GroundAtom> out;
  if (goal(c)) {
    return out;
  }
  for (std::size_t b = 0; b < c.boxes.size(); ++b) {
    int at = c.box_at[b];
    if (at < 0) {
      out.emplace_back(v.unload, std::initializer_list<Symbol>{c.boxes[b], c.trucks[-at - 1]});
      continue;
    }
    for (std::size_t t = 0; t < c.trucks.size(); ++t) {
      if (c.truck_city[t] == at) {
        out.emplace_back(v.load, std::initializer_list<Symbol>{c.boxes[b], c.trucks[t]});
      }
    }
  }
  for (std::size_t t = 0; t < c.trucks.size(); ++t) {
    for (std::size_t city = 0; city < c.cities.size(); ++city) {
      if (static_cast<int>(city) != c.truck_city[t]) {
        out.emplace_back(v.move, std::initializer_list<Symbol>{c.trucks[t], c.cities[city]});
      }
    }
  }
  std::ranges::sort(out, [](const GroundAtom& a, const GroundAtom& b) { return logic::lexicographic_less(a, b); });
  return out;
}

State Logistics::transition(const State& state, const GroundAtom& action) const {
  const auto& v = vocab();
  Config c = parse(state);
  if (goal(c)) {
    throw DomainError("no actions apply in a goal state");
  }
  auto illegal = [&] { return DomainError("illegal action " + logic::to_string(action)); };
  if (action.predicate == v.move) {
    int t = index_in(c.trucks, action.args[0]);
    int city = index_in(c.cities, action.args[1]);
    if (t < 0 || city < 0 || c.truck_city[t] == city) {
      throw illegal();
    }
    c.truck_city[t] = city;
  } else if (action.predicate == v.load || action.predicate == v.unload) {
    int b = index_in(c.boxes, action.args[0]);
    int t = index_in(c.trucks, action.args[1]);
    if (b < 0 || t < 0) {
      throw illegal();
    }
    if (action.predicate == v.load) {
      if (c.box_at[b] != c.truck_city[t]) {
        throw illegal();
      }
      c.box_at[b] = -(t + 1);
    } else {
      if (c.box_at[b] != -(t + 1)) {
        throw illegal();
      }
      c.box_at[b] = c.truck_city[t];
    }
  } else {
    throw illegal();
  }
  return build(c);
}

double Logistics::reward(const State&, const GroundAtom&, const State& next) const {
  return is_goal(next) ? goal_reward() : -0.2;
}

State Logistics::initial_state(const ObjectCounts& counts, Rng& rng) const {
  check_counts(counts);
  Config c;
  c.cities = numbered("city", counts.cities);
  c.trucks = numbered("truck", counts.trucks);
  c.boxes = numbered("box", counts.boxes);
  const auto n_cities = static_cast<std::size_t>(counts.cities);
  c.destination = static_cast<int>(uniform_index(rng, n_cities));
  // Uniform over the cities other than the destination.
  auto elsewhere = [&] {
    auto k = static_cast<int>(uniform_index(rng, n_cities - 1));
    return k >= c.destination ? k + 1 : k;
  };
  for (std::size_t t = 0; t < c.trucks.size(); ++t) {
    c.truck_city.push_back(elsewhere());
  }
  for (std::size_t b = 0; b < c.boxes.size(); ++b) {
    c.box_at.push_back(elsewhere());
  }
  return build(c);
}

std::vector<State> Logistics::all_states(const ObjectCounts& counts) const {
  check_counts(counts);
  const long long places = counts.cities + counts.trucks;
  long long total = counts.cities;
  for (int i = 0; i < counts.trucks + counts.boxes; ++i) {
    total *= i < counts.trucks ? counts.cities : places;
    if (total > 1'000'000) {
      throw DomainError("logistics instance too large to enumerate");
    }
  }
  Config c;
  c.cities = numbered("city", counts.cities);
  c.trucks = numbered("truck", counts.trucks);
  c.boxes = numbered("box", counts.boxes);
  // Digits: destination, truck cities, box places (cities then trucks).
  const std::size_t digits = 1 + c.trucks.size() + c.boxes.size();
  std::vector<int> odometer(digits, 0);
  auto radix = [&](std::size_t k) { return k <= c.trucks.size() ? counts.cities : static_cast<int>(places); };
  std::vector<State> out;
  for (;;) {
    c.destination = odometer[0];
    c.truck_city.assign(odometer.begin() + 1, odometer.begin() + 1 + static_cast<std::ptrdiff_t>(c.trucks.size()));
    c.box_at.clear();
    for (std::size_t b = 0; b < c.boxes.size(); ++b) {
      int p = odometer[1 + c.trucks.size() + b];
      c.box_at.push_back(p < counts.cities ? p : -(p - counts.cities + 1));
    }
    out.push_back(build(c));
    std::size_t k = digits;
    while (k > 0 && odometer[k - 1] == radix(k - 1) - 1) {
      odometer[--k] = 0;
    }
    if (k == 0) {
      break;
    }
    ++odometer[k - 1];
  }
  return out;
}

std::optional<int> Logistics::optimal_steps(const State& state, std::size_t) const {
  Config c = parse(state);
  int best = std::numeric_limits<int>::max();
  for (int at : c.box_at) {
    int cost = 0;
    if (at == c.destination) {
      cost = 0;
    } else if (at < 0) {
      cost = c.truck_city[-at - 1] == c.destination ? 1 : 2;
    } else {
      cost = std::ranges::find(c.truck_city, at) != c.truck_city.end() ? 3 : 4;
    }
    best = std::min(best, cost);
  }
  return best;
}

ObjectCounts Logistics::parse_counts(std::string_view text) const {
  text = logic::trim(text);
  auto first = text.find(':');
  auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw ConfigError("logistics counts look like cities:trucks:boxes, got '" + std::string(text) + "'");
  }
  ObjectCounts c;
  c.cities = static_cast<int>(parse_int(text.substr(0, first)));
  c.trucks = static_cast<int>(parse_int(text.substr(first + 1, second - first - 1)));
  c.boxes = static_cast<int>(parse_int(text.substr(second + 1)));
  if (c.cities < 2 || c.trucks < 1 || c.boxes < 1 || c.cities > 64 || c.trucks > 64 || c.boxes > 64) {
    throw ConfigError("logistics counts out of range: '" + std::string(text) + "'");
  }
  return c;
}

std::string Logistics::format_counts(const ObjectCounts& counts) const {
  return std::to_string(counts.cities) + ":" + std::to_string(counts.trucks) + ":" + std::to_string(counts.boxes);
}

State Logistics::make_state(const Layout& layout) const {
  Config c;
  for (const auto& city : layout.cities) {
    c.cities.push_back(Symbol::intern(city));
  }
  c.destination = index_in(c.cities, Symbol::intern(layout.destination));
  if (c.destination < 0) {
    throw DomainError("destination " + layout.destination + " is not a city");
  }
  for (const auto& [truck, city] : layout.trucks) {
    int k = index_in(c.cities, Symbol::intern(city));
    if (k < 0) {
      throw DomainError("unknown city " + city);
    }
    c.trucks.push_back(Symbol::intern(truck));
    c.truck_city.push_back(k);
  }
  for (const auto& [box, place] : layout.boxes) {
    Symbol p = Symbol::intern(place);
    int city = index_in(c.cities, p);
    int truck = index_in(c.trucks, p);
    if (city < 0 && truck < 0) {
      throw DomainError("unknown place " + place);
    }
    c.boxes.push_back(Symbol::intern(box));
    c.box_at.push_back(city >= 0 ? city : -(truck + 1));
  }
  State s = build(c);
  check_invariants(s);
  return s;
}

}  // namespace rfq::domains
