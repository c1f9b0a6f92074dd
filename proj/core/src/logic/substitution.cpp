#include "rfq/logic/substitution.hpp"

#include <algorithm>

namespace rfq::logic {

Substitution::Substitution(std::initializer_list<Binding> bindings) {
  for (const auto& [var, value] : bindings) {
    bind(var, value);
  }
}

std::optional<Symbol> Substitution::lookup(Symbol variable) const noexcept {
  for (const auto& [var, value] : bindings_) {
    if (var == variable) {
      return value;
    }
  }
  return std::nullopt;
}

bool Substitution::bind(Symbol variable, Symbol constant) {
  if (auto existing = lookup(variable)) {
    return *existing == constant;
  }
  bindings_.emplace_back(variable, constant);
  return true;
}

bool Substitution::extends(const Substitution& base) const noexcept {
  return std::ranges::all_of(base.bindings_, [this](const Binding& b) {
    auto mine = lookup(b.first);
    return mine && *mine == b.second;
  });
}

bool operator==(const Substitution& a, const Substitution& b) {
  return a.size() == b.size() && a.extends(b);
}

Atom apply(const Substitution& sub, const Atom& atom) {
  Atom out = atom;
  for (std::size_t i = 0; i < atom.predicate.arity; ++i) {
    const Term& t = atom.args[i];
    if (t.is_variable()) {
      if (auto value = sub.lookup(t.symbol())) {
        out.args[i] = Term::constant(*value);
      }
    }
  }
  return out;
}

std::string to_string(const Substitution& sub) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : sub.bindings()) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += std::string(var.name()) + "->" + std::string(value.name());
  }
  return out + "}";
}

}  // namespace rfq::logic
