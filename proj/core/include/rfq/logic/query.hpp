#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/state.hpp"
#include "rfq/logic/substitution.hpp"

namespace rfq::logic {

/// A conjunction compiled against a fixed list of input variables.
///
/// Variables are numbered into slots: inputs first (in the given order), then
/// the remaining variables in order of first occurrence. Positive literals are
/// solved left to right by backtracking over facts in insertion order;
/// negated literals are checked last, once every variable is bound
/// (negation as failure).
class Query {
 public:
  static constexpr std::size_t kMaxVariables = 32;

  Query() = default;

  /// Throws BiasError when a negated literal mentions a variable that is
  /// neither an input nor bound by a positive literal.
  Query(const Conjunction& conjunction, std::span<const Symbol> inputs);

  std::span<const Symbol> variables() const noexcept { return variables_; }
  std::size_t input_count() const noexcept { return input_count_; }

  /// True iff some extension of the inputs satisfies every literal.
  bool holds(const State& state, std::span<const Symbol> inputs) const;

  /// Calls `visit(slots)` for every satisfying assignment in enumeration
  /// order; `slots` is indexed like variables(). Stops early when `visit`
  /// returns false.
  template <typename Visitor>
  void enumerate(const State& state, std::span<const Symbol> inputs, Visitor&& visit) const;

 private:
  struct Arg {
    bool is_slot = false;
    std::uint32_t slot = 0;
    Symbol constant;
  };
  struct CompiledLiteral {
    Predicate predicate;
    std::array<Arg, kMaxArity> args{};
    bool negated = false;
  };
  using Slots = std::array<Symbol, kMaxVariables>;

  template <typename Visitor>
  bool solve(std::size_t level, const State& state, Slots& slots, Visitor& visit) const;

  bool negatives_hold(const State& state, const Slots& slots) const;
  GroundAtom ground(const CompiledLiteral& lit, const Slots& slots) const;

  std::vector<CompiledLiteral> positives_;
  std::vector<CompiledLiteral> negatives_;
  std::vector<Symbol> variables_;
  std::size_t input_count_ = 0;
};

/// Every extension of `seed` satisfying `conjunction` in `state`, in
/// deterministic enumeration order.
std::vector<Substitution> match(const Conjunction& conjunction, const State& state, const Substitution& seed = {});

/// First substitution in enumeration order, if any.
std::optional<Substitution> first_match(const Conjunction& conjunction, const State& state,
                                        const Substitution& seed = {});

/// Seeds `action_variables` with the action's arguments and tests the
/// conjunction existentially.
std::optional<Substitution> satisfies(const Conjunction& test, const State& state, const GroundAtom& action,
                                      std::span<const Symbol> action_variables);

// ---------------------------------------------------------------------------

template <typename Visitor>
void Query::enumerate(const State& state, std::span<const Symbol> inputs, Visitor&& visit) const {
  Slots slots{};
  for (std::size_t i = 0; i < input_count_; ++i) {
    slots[i] = inputs[i];
  }
  solve(0, state, slots, visit);
}

template <typename Visitor>
bool Query::solve(std::size_t level, const State& state, Slots& slots, Visitor& visit) const {
  if (level == positives_.size()) {
    if (!negatives_hold(state, slots)) {
      return true;
    }
    return visit(std::span<const Symbol>(slots.data(), variables_.size()));
  }
  const CompiledLiteral& lit = positives_[level];
  const std::size_t arity = lit.predicate.arity;

  bool all_bound = true;
  for (std::size_t i = 0; i < arity; ++i) {
    if (lit.args[i].is_slot && !slots[lit.args[i].slot].valid()) {
      all_bound = false;
      break;
    }
  }
  if (all_bound) {
    if (!state.contains(ground(lit, slots))) {
      return true;
    }
    return solve(level + 1, state, slots, visit);
  }

  const auto facts = state.facts();
  for (std::uint32_t pos : state.positions_of(lit.predicate)) {
    const GroundAtom& fact = facts[pos];
    std::array<std::uint32_t, kMaxArity> newly_bound{};
    std::size_t n_new = 0;
    bool ok = true;
    for (std::size_t i = 0; i < arity && ok; ++i) {
      const Arg& a = lit.args[i];
      if (!a.is_slot) {
        ok = fact.args[i] == a.constant;
      } else if (slots[a.slot].valid()) {
        ok = slots[a.slot] == fact.args[i];
      } else {
        slots[a.slot] = fact.args[i];
        newly_bound[n_new++] = a.slot;
      }
    }
    bool keep_going = true;
    if (ok) {
      keep_going = solve(level + 1, state, slots, visit);
    }
    for (std::size_t k = 0; k < n_new; ++k) {
      slots[newly_bound[k]] = Symbol{};
    }
    if (!keep_going) {
      return false;
    }
  }
  return true;
}

}  // namespace rfq::logic
