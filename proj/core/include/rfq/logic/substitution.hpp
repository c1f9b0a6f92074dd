#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rfq/logic/atom.hpp"

namespace rfq::logic {

/// Functional map from variables to constants. Small in practice, so a flat
/// vector in binding order.
class Substitution {
 public:
  using Binding = std::pair<Symbol, Symbol>;  // variable, constant

  Substitution() = default;
  Substitution(std::initializer_list<Binding> bindings);

  std::optional<Symbol> lookup(Symbol variable) const noexcept;

  /// False (and no change) when the variable is already bound elsewhere.
  bool bind(Symbol variable, Symbol constant);

  /// True when every binding of `base` is also in *this.
  bool extends(const Substitution& base) const noexcept;

  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  const std::vector<Binding>& bindings() const noexcept { return bindings_; }

  /// Set equality, independent of binding order.
  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  std::vector<Binding> bindings_;
};

/// Replaces bound variables; unbound variables are kept as they are.
Atom apply(const Substitution& sub, const Atom& atom);

std::string to_string(const Substitution& sub);  // "{X->a, Y->b}"

}  // namespace rfq::logic
