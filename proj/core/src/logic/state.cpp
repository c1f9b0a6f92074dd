#include "rfq/logic/state.hpp"

#include <algorithm>

namespace rfq::logic {

State::State(std::span<const GroundAtom> facts) {
  facts_.reserve(facts.size());
  sorted_.reserve(facts.size());
  for (const auto& f : facts) {
    add(f);
  }
}

State::State(std::initializer_list<GroundAtom> facts) : State(std::span<const GroundAtom>(facts.begin(), facts.size())) {}

bool State::add(const GroundAtom& fact) {
  auto pos = std::lower_bound(sorted_.begin(), sorted_.end(), fact, id_less);
  if (pos != sorted_.end() && *pos == fact) {
    return false;
  }
  sorted_.insert(pos, fact);
  const auto position = static_cast<std::uint32_t>(facts_.size());
  facts_.push_back(fact);
  auto entry = std::ranges::find_if(index_, [&](const PredicateIndex& e) { return e.predicate == fact.predicate; });
  if (entry == index_.end()) {
    index_.push_back(PredicateIndex{fact.predicate, {position}});
  } else {
    entry->positions.push_back(position);
  }
  return true;
}

bool State::contains(const GroundAtom& fact) const noexcept {
  return std::binary_search(sorted_.begin(), sorted_.end(), fact, id_less);
}

std::span<const std::uint32_t> State::positions_of(const Predicate& p) const noexcept {
  for (const auto& e : index_) {
    if (e.predicate == p) {
      return e.positions;
    }
  }
  return {};
}

std::size_t State::hash() const noexcept {
  std::size_t h = sorted_.size();
  for (const auto& f : sorted_) {
    h ^= hash_value(f) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace rfq::logic
