#include "rfq/domains/domain.hpp"

#include <deque>
#include <unordered_map>

#include "rfq/domains/blocks_world.hpp"
#include "rfq/domains/logistics.hpp"
#include "rfq/error.hpp"

namespace rfq::domains {

std::optional<int> Domain::optimal_steps(const logic::State& state, std::size_t budget) const {
  return bfs_optimal_steps(*this, state, budget);
}

StepResult Domain::step(const logic::State& state, const logic::GroundAtom& action) const {
  StepResult out;
  out.next = transition(state, action);
  out.reward = reward(state, action, out.next);
  out.terminal = is_goal(out.next);
  return out;
}

std::unique_ptr<Domain> make_domain(std::string_view task, const DomainOptions& options) {
  if (task == "stack") {
    return std::make_unique<BlocksWorld>(BlocksTask::Stack, options);
  }
  if (task == "unstack") {
    return std::make_unique<BlocksWorld>(BlocksTask::Unstack, options);
  }
  if (task == "on") {
    return std::make_unique<BlocksWorld>(BlocksTask::On, options);
  }
  if (task == "logistics") {
    return std::make_unique<Logistics>();
  }
  throw ConfigError("unknown domain '" + std::string(task) + "'");
}

std::vector<std::string> domain_names() { return {"stack", "unstack", "on", "logistics"}; }

std::optional<int> bfs_optimal_steps(const Domain& domain, const logic::State& start, std::size_t budget) {
  if (domain.is_goal(start)) {
    return 0;
  }
  std::unordered_map<logic::State, int, logic::StateHash> depth;
  std::deque<logic::State> frontier;
  depth.emplace(start, 0);
  frontier.push_back(start);
  std::size_t expanded = 0;
  while (!frontier.empty()) {
    if (++expanded > budget) {
      return std::nullopt;
    }
    logic::State s = std::move(frontier.front());
    frontier.pop_front();
    int d = depth.at(s);
    for (const auto& a : domain.legal_actions(s)) {
      logic::State next = domain.transition(s, a);
      if (domain.is_goal(next)) {
        return d + 1;
      }
      if (depth.emplace(next, d + 1).second) {
        frontier.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;  // no goal reachable
}

}  // namespace rfq::domains
