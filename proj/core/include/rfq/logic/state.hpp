#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfq/logic/atom.hpp"

namespace rfq::logic {

/// Closed-world set of ground facts. Anything not stored is false.
///
/// Facts keep their insertion order, which fixes the enumeration order of
/// matching. Membership goes through a sorted copy, and a per-predicate index
/// lists fact positions in insertion order.
class State {
 public:
  State() = default;
  explicit State(std::span<const GroundAtom> facts);
  State(std::initializer_list<GroundAtom> facts);

  /// Returns false when the fact was already present.
  bool add(const GroundAtom& fact);

  bool contains(const GroundAtom& fact) const noexcept;

  std::span<const GroundAtom> facts() const noexcept { return facts_; }
  std::size_t size() const noexcept { return facts_.size(); }
  bool empty() const noexcept { return facts_.empty(); }

  /// Positions (into facts()) of facts with this predicate, insertion order.
  std::span<const std::uint32_t> positions_of(const Predicate& p) const noexcept;

  /// Facts sorted by id_less; identical for equal states.
  std::span<const GroundAtom> sorted_facts() const noexcept { return sorted_; }

  std::size_t hash() const noexcept;

  /// Set equality.
  friend bool operator==(const State& a, const State& b) { return a.sorted_ == b.sorted_; }

 private:
  struct PredicateIndex {
    Predicate predicate;
    std::vector<std::uint32_t> positions;
  };

  std::vector<GroundAtom> facts_;
  std::vector<GroundAtom> sorted_;
  std::vector<PredicateIndex> index_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

}  // namespace rfq::logic
