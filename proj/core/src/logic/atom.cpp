#include "rfq/logic/atom.hpp"

#include <algorithm>

#include "rfq/error.hpp"

namespace rfq::logic {

Predicate Predicate::make(std::string_view name, std::size_t arity) {
  if (arity > kMaxArity) {
    throw BiasError("predicate " + std::string(name) + " exceeds the maximum arity");
  }
  return Predicate{Symbol::intern(name), static_cast<std::uint8_t>(arity)};
}

std::string to_string(const Predicate& p) { return std::string(p.name.name()) + "/" + std::to_string(p.arity); }

Atom::Atom(Predicate p, std::initializer_list<Term> terms) : Atom(p, std::span<const Term>(terms.begin(), terms.size())) {}

Atom::Atom(Predicate p, std::span<const Term> terms) : predicate(p) {
  if (terms.size() != p.arity) {
    throw BiasError("atom " + to_string(p) + " given " + std::to_string(terms.size()) + " arguments");
  }
  std::copy(terms.begin(), terms.end(), args.begin());
}

bool Atom::is_ground() const noexcept {
  return std::ranges::none_of(arguments(), [](const Term& t) { return t.is_variable(); });
}

bool operator==(const Atom& a, const Atom& b) {
  return a.predicate == b.predicate && std::ranges::equal(a.arguments(), b.arguments());
}

GroundAtom::GroundAtom(Predicate p, std::initializer_list<Symbol> constants)
    : GroundAtom(p, std::span<const Symbol>(constants.begin(), constants.size())) {}

GroundAtom::GroundAtom(Predicate p, std::span<const Symbol> constants) : predicate(p) {
  if (constants.size() != p.arity) {
    throw BiasError("fact " + to_string(p) + " given " + std::to_string(constants.size()) + " arguments");
  }
  std::copy(constants.begin(), constants.end(), args.begin());
}

Atom GroundAtom::lift() const {
  Atom out;
  out.predicate = predicate;
  for (std::size_t i = 0; i < std::min<std::size_t>(predicate.arity, kMaxArity); ++i) {
    out.args[i] = Term::constant(args[i]);
  }
  return out;
}

bool operator==(const GroundAtom& a, const GroundAtom& b) {
  return a.predicate == b.predicate && std::ranges::equal(a.arguments(), b.arguments());
}

bool id_less(const GroundAtom& a, const GroundAtom& b) {
  if (a.predicate.name != b.predicate.name) {
    return a.predicate.name < b.predicate.name;
  }
  if (a.predicate.arity != b.predicate.arity) {
    return a.predicate.arity < b.predicate.arity;
  }
  return std::ranges::lexicographical_compare(a.arguments(), b.arguments());
}

bool lexicographic_less(const GroundAtom& a, const GroundAtom& b) {
  if (a.predicate.name != b.predicate.name) {
    return lexicographic_less(a.predicate.name, b.predicate.name);
  }
  if (a.predicate.arity != b.predicate.arity) {
    return a.predicate.arity < b.predicate.arity;
  }
  const auto lhs = a.arguments();
  const auto rhs = b.arguments();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs[i] != rhs[i]) {
      return lexicographic_less(lhs[i], rhs[i]);
    }
  }
  return false;
}

std::size_t hash_value(const GroundAtom& a) noexcept {
  std::size_t h = (static_cast<std::size_t>(a.predicate.name.id()) << 3) ^ a.predicate.arity;
  for (Symbol s : a.arguments()) {
    h ^= s.id() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Symbol> Conjunction::variables() const {
  std::vector<Symbol> out;
  for (const auto& lit : literals) {
    for (const Term& t : lit.atom.arguments()) {
      if (t.is_variable() && std::ranges::find(out, t.symbol()) == out.end()) {
        out.push_back(t.symbol());
      }
    }
  }
  return out;
}

Conjunction& Conjunction::operator+=(const Conjunction& other) {
  literals.insert(literals.end(), other.literals.begin(), other.literals.end());
  return *this;
}

std::string to_string(const Term& t) { return std::string(t.symbol().name()); }

namespace {

template <typename Args, typename Fn>
std::string render(const Predicate& p, const Args& args, Fn&& name_of) {
  std::string out(p.name.name());
  out += '(';
  bool first = true;
  for (const auto& a : args) {
    if (!first) {
      out += ',';
    }
    first = false;
    out += name_of(a);
  }
  out += ')';
  return out;
}

}  // namespace

std::string to_string(const Atom& a) {
  return render(a.predicate, a.arguments(), [](const Term& t) { return to_string(t); });
}

std::string to_string(const GroundAtom& a) {
  return render(a.predicate, a.arguments(), [](Symbol s) { return std::string(s.name()); });
}

std::string to_string(const Literal& l) { return (l.negated ? "!" : "") + to_string(l.atom); }

std::string to_string(const Conjunction& c) {
  if (c.empty()) {
    return "true";
  }
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i != 0) {
      out += ", ";
    }
    out += to_string(c.literals[i]);
  }
  return out;
}

}  // namespace rfq::logic
