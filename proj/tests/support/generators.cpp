#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "rfq/domains/blocks_world.hpp"

namespace rfq::testkit {

using logic::Atom;
using logic::Conjunction;
using logic::GroundAtom;
using logic::Literal;
using logic::Predicate;
using logic::State;
using logic::Substitution;
using logic::Symbol;
using logic::Term;

namespace {

const std::vector<Predicate>& predicates() {
  static const std::vector<Predicate> ps = {Predicate::make("p", 1), Predicate::make("q", 2), Predicate::make("r", 2)};
  return ps;
}

const std::vector<Symbol>& constants() {
  static const std::vector<Symbol> cs = [] {
    std::vector<Symbol> out;
    for (const char* c : {"a", "b", "c", "d", "e"}) {
      out.push_back(Symbol::intern(c));
    }
    return out;
  }();
  return cs;
}

const std::vector<Symbol>& variables() {
  static const std::vector<Symbol> vs = {Symbol::intern("X"), Symbol::intern("Y"), Symbol::intern("Z"),
                                         Symbol::intern("W")};
  return vs;
}

bool literal_holds(const Literal& lit, const State& state, const Substitution& sub) {
  GroundAtom g;
  g.predicate = lit.atom.predicate;
  for (std::size_t i = 0; i < lit.atom.predicate.arity; ++i) {
    const Term& t = lit.atom.args[i];
    if (t.is_constant()) {
      g.args[i] = t.symbol();
    } else {
      g.args[i] = *sub.lookup(t.symbol());
    }
  }
  return state.contains(g) != lit.negated;
}

}  // namespace

State random_state(Rng& rng, std::size_t max_facts) {
  State s;
  const std::size_t n = uniform_index(rng, max_facts + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const Predicate& p = predicates()[uniform_index(rng, predicates().size())];
    std::vector<Symbol> args;
    for (std::size_t i = 0; i < p.arity; ++i) {
      args.push_back(constants()[uniform_index(rng, constants().size())]);
    }
    s.add(GroundAtom(p, args));
  }
  return s;
}

Conjunction random_conjunction(Rng& rng, const std::vector<Symbol>& seed_vars, std::size_t max_len) {
  Conjunction c;
  std::set<Symbol> bound(seed_vars.begin(), seed_vars.end());
  const std::size_t len = 1 + uniform_index(rng, max_len);
  for (std::size_t k = 0; k < len; ++k) {
    Literal lit;
    lit.negated = !bound.empty() && uniform01(rng) < 0.25;
    const Predicate& p = predicates()[uniform_index(rng, predicates().size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < p.arity; ++i) {
      if (uniform01(rng) < 0.15) {
        args.push_back(Term::constant(constants()[uniform_index(rng, constants().size())]));
      } else if (lit.negated) {
        std::vector<Symbol> pool(bound.begin(), bound.end());
        args.push_back(Term::variable(pool[uniform_index(rng, pool.size())]));
      } else {
        args.push_back(Term::variable(variables()[uniform_index(rng, variables().size())]));
      }
    }
    lit.atom = Atom(p, args);
    if (!lit.negated) {
      for (const auto& t : args) {
        if (t.is_variable()) {
          bound.insert(t.symbol());
        }
      }
    }
    c.literals.push_back(lit);
  }
  return c;
}

std::vector<Substitution> brute_force_match(const Conjunction& conjunction, const State& state,
                                            const Substitution& seed) {
  std::vector<Symbol> free;
  for (Symbol v : conjunction.variables()) {
    if (!seed.lookup(v)) {
      free.push_back(v);
    }
  }
  std::vector<Symbol> domain;
  for (const auto& f : state.facts()) {
    for (Symbol a : f.arguments()) {
      if (std::ranges::find(domain, a) == domain.end()) {
        domain.push_back(a);
      }
    }
  }
  std::vector<Substitution> out;
  Substitution sub = seed;
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == free.size()) {
      if (std::ranges::all_of(conjunction.literals, [&](const Literal& l) { return literal_holds(l, state, sub); })) {
        out.push_back(sub);
      }
      return;
    }
    for (Symbol c : domain) {
      Substitution saved = sub;
      sub.bind(free[k], c);
      assign(k + 1);
      sub = saved;
    }
  };
  assign(0);
  return out;
}

std::string canonical(const Substitution& sub) {
  std::vector<std::string> parts;
  for (const auto& [v, c] : sub.bindings()) {
    parts.push_back(std::string(v.name()) + "=" + std::string(c.name()));
  }
  std::ranges::sort(parts);
  std::string out;
  for (const auto& p : parts) {
    out += p + ";";
  }
  return out;
}

std::pair<State, GroundAtom> random_blocks_probe(const domains::Domain& domain, Rng& rng) {
  for (;;) {
    domains::ObjectCounts counts;
    counts.blocks = 2 + static_cast<int>(uniform_index(rng, 4));
    State s = domain.initial_state(counts, rng);
    auto actions = domain.legal_actions(s);
    if (!actions.empty()) {
      return {s, actions[uniform_index(rng, actions.size())]};
    }
  }
}

std::vector<rrt::RegExample> random_blocks_dataset(const domains::Domain& domain, Rng& rng, std::size_t n) {
  const auto& blocks = dynamic_cast<const domains::BlocksWorld&>(domain);
  const Predicate clear = Predicate::make("clear", 1);
  const double noise = uniform01(rng);
  std::vector<rrt::RegExample> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto [s, a] = random_blocks_probe(domain, rng);
    double target = static_cast<double>(blocks.tower_heights(s).front());
    if (s.contains(GroundAtom(clear, {a.args[1]}))) {
      target += 1.5;
    }
    target += noise * (2.0 * uniform01(rng) - 1.0);
    out.push_back(rrt::RegExample{std::move(s), a, target, 1.0});
  }
  return out;
}

std::pair<State, GroundAtom> random_logistics_probe(const domains::Domain& domain, Rng& rng) {
  domains::ObjectCounts counts;
  counts.cities = 2 + static_cast<int>(uniform_index(rng, 3));
  counts.trucks = 1 + static_cast<int>(uniform_index(rng, 2));
  counts.boxes = 1 + static_cast<int>(uniform_index(rng, 3));
  State s = domain.initial_state(counts, rng);
  // A few random steps so loaded boxes and trucks at the destination show up.
  const std::size_t walk = uniform_index(rng, 4);
  for (std::size_t k = 0; k < walk; ++k) {
    auto actions = domain.legal_actions(s);
    auto next = domain.transition(s, actions[uniform_index(rng, actions.size())]);
    if (domain.is_goal(next)) {
      break;
    }
    s = std::move(next);
  }
  auto actions = domain.legal_actions(s);
  return {s, actions[uniform_index(rng, actions.size())]};
}

std::vector<rrt::RegExample> random_logistics_dataset(const domains::Domain& domain, Rng& rng, std::size_t n) {
  const double noise = uniform01(rng);
  std::vector<rrt::RegExample> out;
  for (std::size_t k = 0; k < n; ++k) {
    auto [s, a] = random_logistics_probe(domain, rng);
    double target = domain.is_goal(domain.transition(s, a)) ? 1.0 : -0.2;
    target += static_cast<double>(a.predicate.name.id() % 3) * 0.3;
    target += noise * (2.0 * uniform01(rng) - 1.0);
    out.push_back(rrt::RegExample{std::move(s), a, target, 1.0});
  }
  return out;
}

}  // namespace rfq::testkit
