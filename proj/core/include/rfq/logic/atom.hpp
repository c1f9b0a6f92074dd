#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rfq/logic/symbol.hpp"

namespace rfq::logic {

inline constexpr std::size_t kMaxArity = 4;

/// Either a constant (object name) or a variable. The two kinds never compare
/// equal even when spelled alike.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable };

  constexpr Term() = default;

  static Term constant(Symbol s) { return Term(Kind::Constant, s); }
  static Term variable(Symbol s) { return Term(Kind::Variable, s); }
  static Term constant(std::string_view name) { return constant(Symbol::intern(name)); }
  static Term variable(std::string_view name) { return variable(Symbol::intern(name)); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  constexpr bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  constexpr Symbol symbol() const noexcept { return symbol_; }

  friend constexpr bool operator==(const Term&, const Term&) = default;

 private:
  constexpr Term(Kind kind, Symbol symbol) : kind_(kind), symbol_(symbol) {}

  Kind kind_ = Kind::Constant;
  Symbol symbol_;
};

struct Predicate {
  Symbol name;
  std::uint8_t arity = 0;

  static Predicate make(std::string_view name, std::size_t arity);

  friend constexpr bool operator==(const Predicate&, const Predicate&) = default;
};

std::string to_string(const Predicate& p);  // "name/arity"

/// Predicate applied to terms. Ground when every argument is a constant.
struct Atom {
  Predicate predicate;
  std::array<Term, kMaxArity> args{};

  Atom() = default;
  Atom(Predicate p, std::initializer_list<Term> terms);
  Atom(Predicate p, std::span<const Term> terms);

  std::span<const Term> arguments() const noexcept { return {args.data(), predicate.arity}; }
  bool is_ground() const noexcept;

  friend bool operator==(const Atom& a, const Atom& b);
};

/// Fully ground atom; doubles as a fact in a state and as a ground action.
struct GroundAtom {
  Predicate predicate;
  std::array<Symbol, kMaxArity> args{};

  GroundAtom() = default;
  GroundAtom(Predicate p, std::initializer_list<Symbol> constants);
  GroundAtom(Predicate p, std::span<const Symbol> constants);

  std::span<const Symbol> arguments() const noexcept { return {args.data(), predicate.arity}; }
  Atom lift() const;

  friend bool operator==(const GroundAtom& a, const GroundAtom& b);
};

/// Total order by predicate id, arity, then argument ids. Cheap; not stable
/// across processes with different interning orders.
bool id_less(const GroundAtom& a, const GroundAtom& b);

/// Order by predicate spelling, then argument spellings. Reproducible.
bool lexicographic_less(const GroundAtom& a, const GroundAtom& b);

std::size_t hash_value(const GroundAtom& a) noexcept;

struct Literal {
  Atom atom;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Ordered conjunction of literals. Variables shared across literals denote
/// the same binding.
struct Conjunction {
  std::vector<Literal> literals;

  bool empty() const noexcept { return literals.empty(); }
  std::size_t size() const noexcept { return literals.size(); }

  /// Distinct variables in order of first occurrence.
  std::vector<Symbol> variables() const;

  Conjunction& operator+=(const Conjunction& other);
  friend Conjunction operator+(Conjunction a, const Conjunction& b) { return a += b; }

  friend bool operator==(const Conjunction&, const Conjunction&) = default;
};

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const GroundAtom& a);
std::string to_string(const Literal& l);
std::string to_string(const Conjunction& c);  // "lit, lit, ..." or "true"

}  // namespace rfq::logic

template <>
struct std::hash<rfq::logic::GroundAtom> {
  std::size_t operator()(const rfq::logic::GroundAtom& a) const noexcept { return rfq::logic::hash_value(a); }
};
