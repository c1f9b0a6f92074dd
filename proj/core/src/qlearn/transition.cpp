#include "rfq/qlearn/transition.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"

namespace rfq::qlearn {

void ReplayBuffer::add(const Transition& t) {
  if (capacity_ == 0) {
    return;
  }
  if (items_.size() == capacity_) {
    items_.pop_front();
  }
  items_.push_back(t);
}

void ReplayBuffer::add(const std::vector<Transition>& ts) {
  for (const auto& t : ts) {
    add(t);
  }
}

std::vector<Transition> ReplayBuffer::sample(std::size_t k, Rng& rng) const {
  std::vector<std::size_t> all(items_.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> picked;
  picked.reserve(std::min(k, all.size()));
  std::sample(all.begin(), all.end(), std::back_inserter(picked), k, rng);
  std::vector<Transition> out;
  out.reserve(picked.size());
  for (auto i : picked) {
    out.push_back(items_[i]);
  }
  return out;
}

void write_episodes(std::ostream& out, const std::vector<Trajectory>& episodes) {
  for (const auto& ep : episodes) {
    if (ep.empty()) {
      continue;
    }
    out << "episode\n" << logic::format_state(ep.front().state) << "actions\n";
    for (const auto& t : ep) {
      out << logic::to_string(t.action) << '\n';
    }
    out << "end\n";
  }
}

std::vector<Trajectory> read_episodes(std::istream& in, const domains::Domain& domain) {
  enum class Section { Outside, Facts, Actions };
  std::vector<Trajectory> out;
  Section section = Section::Outside;
  logic::State state;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = logic::trim(raw);
    if (line.empty() || line.front() == '#') {
      continue;
    }
    auto fail = [&](const std::string& what) {
      return ParseError("episode file line " + std::to_string(line_no) + ": " + what);
    };
    switch (section) {
      case Section::Outside:
        if (line != "episode") {
          throw fail("expected 'episode'");
        }
        state = logic::State();
        section = Section::Facts;
        break;
      case Section::Facts:
        if (line == "actions") {
          domain.check_invariants(state);
          out.emplace_back();
          section = Section::Actions;
        } else {
          state.add(logic::parse_ground_atom(line));
        }
        break;
      case Section::Actions: {
        if (line == "end") {
          section = Section::Outside;
          break;
        }
        if (domain.is_goal(state)) {
          throw fail("action after the goal was reached");
        }
        auto action = logic::parse_ground_atom(line);
        auto step = domain.step(state, action);
        out.back().push_back(Transition{state, action, step.reward, step.next, step.terminal});
        state = std::move(step.next);
        break;
      }
    }
  }
  if (section != Section::Outside) {
    throw ParseError("episode file ends inside an episode");
  }
  return out;
}

}  // namespace rfq::qlearn
