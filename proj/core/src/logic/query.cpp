#include "rfq/logic/query.hpp"

#include <algorithm>

#include "rfq/error.hpp"

namespace rfq::logic {

Query::Query(const Conjunction& conjunction, std::span<const Symbol> inputs)
    : variables_(inputs.begin(), inputs.end()), input_count_(inputs.size()) {
  auto slot_of = [this](Symbol var) -> std::uint32_t {
    auto it = std::ranges::find(variables_, var);
    if (it == variables_.end()) {
      variables_.push_back(var);
      return static_cast<std::uint32_t>(variables_.size() - 1);
    }
    return static_cast<std::uint32_t>(it - variables_.begin());
  };
  auto compile = [&](const Literal& lit) {
    CompiledLiteral out;
    out.predicate = lit.atom.predicate;
    out.negated = lit.negated;
    for (std::size_t i = 0; i < lit.atom.predicate.arity; ++i) {
      const Term& t = lit.atom.args[i];
      out.args[i] = t.is_variable() ? Arg{true, slot_of(t.symbol()), Symbol{}} : Arg{false, 0, t.symbol()};
    }
    return out;
  };

  for (const auto& lit : conjunction.literals) {
    if (!lit.negated) {
      positives_.push_back(compile(lit));
    }
  }
  const std::size_t bound_by_positives = variables_.size();
  for (const auto& lit : conjunction.literals) {
    if (!lit.negated) {
      continue;
    }
    for (const Term& t : lit.atom.arguments()) {
      if (t.is_variable() &&
          std::find(variables_.begin(), variables_.begin() + static_cast<std::ptrdiff_t>(bound_by_positives),
                    t.symbol()) == variables_.begin() + static_cast<std::ptrdiff_t>(bound_by_positives)) {
        throw BiasError("negated literal " + to_string(lit) + " introduces variable " + std::string(t.symbol().name()));
      }
    }
    negatives_.push_back(compile(lit));
  }
  if (variables_.size() > kMaxVariables) {
    throw BiasError("conjunction has too many variables: " + to_string(conjunction));
  }
}

GroundAtom Query::ground(const CompiledLiteral& lit, const Slots& slots) const {
  GroundAtom g;
  g.predicate = lit.predicate;
  for (std::size_t i = 0; i < lit.predicate.arity; ++i) {
    const Arg& a = lit.args[i];
    g.args[i] = a.is_slot ? slots[a.slot] : a.constant;
  }
  return g;
}

bool Query::negatives_hold(const State& state, const Slots& slots) const {
  return std::ranges::none_of(negatives_, [&](const CompiledLiteral& lit) { return state.contains(ground(lit, slots)); });
}

bool Query::holds(const State& state, std::span<const Symbol> inputs) const {
  bool found = false;
  enumerate(state, inputs, [&found](std::span<const Symbol>) {
    found = true;
    return false;
  });
  return found;
}

namespace {

std::vector<Symbol> seed_variables(const Substitution& seed) {
  std::vector<Symbol> vars;
  vars.reserve(seed.size());
  for (const auto& [var, value] : seed.bindings()) {
    vars.push_back(var);
  }
  return vars;
}

std::vector<Symbol> seed_values(const Substitution& seed) {
  std::vector<Symbol> values;
  values.reserve(seed.size());
  for (const auto& [var, value] : seed.bindings()) {
    values.push_back(value);
  }
  return values;
}

Substitution to_substitution(std::span<const Symbol> variables, std::span<const Symbol> slots) {
  Substitution sub;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    sub.bind(variables[i], slots[i]);
  }
  return sub;
}

}  // namespace

std::vector<Substitution> match(const Conjunction& conjunction, const State& state, const Substitution& seed) {
  const auto vars = seed_variables(seed);
  const auto values = seed_values(seed);
  const Query query(conjunction, vars);
  std::vector<Substitution> out;
  query.enumerate(state, values, [&](std::span<const Symbol> slots) {
    out.push_back(to_substitution(query.variables(), slots));
    return true;
  });
  return out;
}

std::optional<Substitution> first_match(const Conjunction& conjunction, const State& state, const Substitution& seed) {
  const auto vars = seed_variables(seed);
  const auto values = seed_values(seed);
  const Query query(conjunction, vars);
  std::optional<Substitution> out;
  query.enumerate(state, values, [&](std::span<const Symbol> slots) {
    out = to_substitution(query.variables(), slots);
    return false;
  });
  return out;
}

std::optional<Substitution> satisfies(const Conjunction& test, const State& state, const GroundAtom& action,
                                      std::span<const Symbol> action_variables) {
  if (action_variables.size() != action.predicate.arity) {
    throw BiasError("action " + to_string(action) + " does not match the test's action variables");
  }
  Substitution seed;
  for (std::size_t i = 0; i < action_variables.size(); ++i) {
    if (!seed.bind(action_variables[i], action.args[i])) {
      return std::nullopt;
    }
  }
  return first_match(test, state, seed);
}

}  // namespace rfq::logic
