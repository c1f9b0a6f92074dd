#pragma once

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <vector>

#include "rfq/domains/domain.hpp"
#include "rfq/logic/atom.hpp"
#include "rfq/logic/state.hpp"
#include "rfq/random.hpp"

namespace rfq::qlearn {

struct Transition {
  logic::State state;
  logic::GroundAtom action;
  double reward = 0.0;
  logic::State next_state;
  bool terminal = false;  // next_state is a goal
};

/// Consecutive transitions chain: next_state of one is state of the next.
using Trajectory = std::vector<Transition>;

/// Bounded FIFO of past transitions.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

  void add(const Transition& t);
  void add(const std::vector<Transition>& ts);

  /// min(k, size()) distinct entries drawn uniformly, in buffer order.
  std::vector<Transition> sample(std::size_t k, Rng& rng) const;

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  const std::deque<Transition>& items() const noexcept { return items_; }
  void clear() noexcept { items_.clear(); }

 private:
  std::size_t capacity_;
  std::deque<Transition> items_;
};

/// Episode file format, used for expert demonstrations:
///
///   episode
///   on(b1,floor)          start-state facts
///   ...
///   actions
///   move(b2,b1)           one action per line
///   end
///
/// Reading replays the actions through the simulator, so the file only has
/// to name a start state and a legal action sequence.
void write_episodes(std::ostream& out, const std::vector<Trajectory>& episodes);
std::vector<Trajectory> read_episodes(std::istream& in, const domains::Domain& domain);

}  // namespace rfq::qlearn
