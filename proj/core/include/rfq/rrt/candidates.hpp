#pragma once

#include <span>
#include <vector>

#include "rfq/logic/atom.hpp"
#include "rfq/logic/mode.hpp"

namespace rfq::rrt {

struct TypedVariable {
  logic::Symbol variable;
  logic::Symbol type;

  friend bool operator==(const TypedVariable&, const TypedVariable&) = default;
};

/// Candidate node test together with the variables it introduces.
struct SplitTest {
  logic::Conjunction conjunction;
  std::vector<TypedVariable> introduced;
};

/// Refinements of a node whose in-scope variables are `context`.
///
/// Single literals are filled per their mode declarations: no variable occurs
/// twice in one literal, at least one argument is not fresh, and fresh
/// variables are named V<k> with k continuing after the context size. Every
/// literal without fresh variables also appears negated. Longer conjunctions
/// chain literals that each use a variable introduced earlier in the same
/// conjunction. Output is deterministic and duplicate-free.
std::vector<SplitTest> generate_candidates(std::span<const TypedVariable> context, const logic::LanguageBias& bias,
                                           std::size_t max_len);

/// Typed canonical variables of an action signature.
std::vector<TypedVariable> action_context(const logic::ActionSignature& action);

}  // namespace rfq::rrt
