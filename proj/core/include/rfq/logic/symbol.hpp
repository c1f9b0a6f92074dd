#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string_view>

namespace rfq::logic {

using SymbolId = std::uint32_t;

/// Interned name. Ids are handed out in first-seen order by a process-wide
/// table; two symbols are equal iff their ids are equal.
class Symbol {
 public:
  static constexpr SymbolId kInvalid = 0xffffffffu;

  constexpr Symbol() = default;

  static Symbol intern(std::string_view name);

  constexpr SymbolId id() const noexcept { return id_; }
  constexpr bool valid() const noexcept { return id_ != kInvalid; }

  /// Stable for the lifetime of the process.
  std::string_view name() const;

  friend constexpr bool operator==(Symbol, Symbol) = default;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  explicit constexpr Symbol(SymbolId id) : id_(id) {}

  SymbolId id_ = kInvalid;
};

/// Orders by spelling rather than by id. Used wherever an ordering has to be
/// reproducible independent of interning order.
bool lexicographic_less(Symbol a, Symbol b);

}  // namespace rfq::logic

template <>
struct std::hash<rfq::logic::Symbol> {
  std::size_t operator()(rfq::logic::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};
