#include "rfq/logic/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace rfq::logic {
namespace {

class SymbolTable {
 public:
  SymbolId intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(name); it != ids_.end()) {
        return it->second;
      }
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) {
      return it->second;
    }
    const auto id = static_cast<SymbolId>(names_.size());
    const std::string& stored = names_.emplace_back(name);
    ids_.emplace(std::string_view(stored), id);
    return id;
  }

  std::string_view name(SymbolId id) const {
    std::shared_lock lock(mutex_);
    // deque never relocates its elements, so the view outlives the lock.
    return names_.at(id);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, SymbolId> ids_;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) { return Symbol(table().intern(name)); }

std::string_view Symbol::name() const {
  if (!valid()) {
    return "<invalid>";
  }
  return table().name(id_);
}

bool lexicographic_less(Symbol a, Symbol b) {
  if (a == b) {
    return false;
  }
  return a.name() < b.name();
}

}  // namespace rfq::logic
