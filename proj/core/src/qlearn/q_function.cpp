#include "rfq/qlearn/q_function.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rfq/error.hpp"

namespace rfq::qlearn {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Gbql:
      return "gbql";
    case Algorithm::Rbfq:
      return "rbfq";
    case Algorithm::Rrt:
      return "rrt";
  }
  return "";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "gbql") {
    return Algorithm::Gbql;
  }
  if (text == "rbfq") {
    return Algorithm::Rbfq;
  }
  if (text == "rrt") {
    return Algorithm::Rrt;
  }
  throw ConfigError("unknown algorithm '" + std::string(text) + "' (expected gbql, rbfq or rrt)");
}

double bellman_target(double q_sa, double reward, double max_next, double alpha, double gamma) {
  return (1.0 - alpha) * q_sa + alpha * (reward + gamma * max_next);
}

double bellman_residual(double q_sa, double reward, double max_next, double gamma) {
  return reward + gamma * max_next - q_sa;
}

double max_q(const QFunction& q, const domains::Domain& domain, const logic::State& state) {
  auto actions = domain.legal_actions(state);
  if (actions.empty()) {
    return 0.0;
  }
  double best = q(state, actions.front());
  for (std::size_t i = 1; i < actions.size(); ++i) {
    best = std::max(best, q(state, actions[i]));
  }
  return best;
}

namespace {

double next_value(const QFunction& q, const domains::Domain& domain, const Transition& t) {
  return t.terminal ? 0.0 : max_q(q, domain, t.next_state);
}

}  // namespace

double bellman_target(const QFunction& q, const domains::Domain& domain, const Transition& t, double alpha,
                      double gamma) {
  return bellman_target(q(t.state, t.action), t.reward, next_value(q, domain, t), alpha, gamma);
}

double bellman_residual(const QFunction& q, const domains::Domain& domain, const Transition& t, double gamma) {
  return bellman_residual(q(t.state, t.action), t.reward, next_value(q, domain, t), gamma);
}

logic::GroundAtom epsilon_greedy_action(const QFunction& q, const logic::State& state,
                                        std::span<const logic::GroundAtom> actions, double epsilon, Rng& rng) {
  if (actions.empty()) {
    throw DomainError("no legal actions to choose from");
  }
  if (uniform01(rng) < epsilon) {
    return actions[uniform_index(rng, actions.size())];
  }
  std::size_t best = 0;
  double best_value = q(state, actions[0]);
  for (std::size_t i = 1; i < actions.size(); ++i) {
    double v = q(state, actions[i]);
    if (v > best_value || (v == best_value && logic::lexicographic_less(actions[i], actions[best]))) {
      best = i;
      best_value = v;
    }
  }
  return actions[best];
}

void write_q_function(std::ostream& out, const QFunction& q) {
  out << "qfunction " << to_string(q.kind) << '\n';
  boosting::write_model(out, q.model);
}

QFunction read_q_function(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream header(line);
  std::string word;
  std::string kind;
  if (!(header >> word >> kind) || word != "qfunction") {
    throw ParseError("expected 'qfunction <algorithm>'");
  }
  QFunction q;
  try {
    q.kind = parse_algorithm(kind);
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
  q.model = boosting::read_model(in);
  return q;
}

}  // namespace rfq::qlearn
