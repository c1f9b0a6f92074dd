#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rfq/logic/atom.hpp"

namespace rfq::logic {

/// Argument role in a split-test literal.
///   Input     must reuse an in-scope variable of the argument type.
///   Output    reuses an in-scope variable or introduces one fresh variable.
///   Constant  is filled with each declared bias constant of the type.
enum class ArgMode { Input, Output, Constant };

struct ArgSpec {
  ArgMode mode = ArgMode::Input;
  Symbol type;

  friend bool operator==(const ArgSpec&, const ArgSpec&) = default;
};

/// Language bias for one predicate. Text form: `on(+block,-block)`, with `#`
/// marking constant arguments.
struct ModeDecl {
  Predicate predicate;
  std::vector<ArgSpec> args;

  friend bool operator==(const ModeDecl&, const ModeDecl&) = default;
};

ModeDecl parse_mode(std::string_view text);
std::string to_string(const ModeDecl& m);

/// Lifted action type with typed arguments. Trees for this action refer to
/// its arguments through canonical variables A, B, C, ...
struct ActionSignature {
  Predicate predicate;
  std::vector<Symbol> arg_types;

  std::vector<Symbol> variables() const;
};

/// Canonical variable name for an action argument position.
Symbol action_variable(std::size_t position);

/// Everything the tree learner may use to build split tests.
struct LanguageBias {
  std::vector<Predicate> vocabulary;
  std::vector<ModeDecl> modes;
  /// (type, constant) pairs eligible for Constant-mode arguments. Only
  /// constants that exist in every instance of a domain belong here.
  std::vector<std::pair<Symbol, Symbol>> constants;
  std::vector<ActionSignature> actions;

  /// Throws BiasError unless every vocabulary predicate has exactly one mode
  /// whose arity matches, and action predicates are unique.
  void validate() const;

  const ModeDecl& mode_for(const Predicate& p) const;
  const ActionSignature& action(const Predicate& p) const;
  std::vector<Symbol> constants_of(Symbol type) const;
};

}  // namespace rfq::logic
