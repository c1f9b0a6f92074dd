#pragma once

#include <iosfwd>
#include <span>
#include <string_view>

#include "rfq/boosting/boosted_model.hpp"
#include "rfq/domains/domain.hpp"
#include "rfq/qlearn/transition.hpp"
#include "rfq/random.hpp"

namespace rfq::qlearn {

enum class Algorithm { Gbql, Rbfq, Rrt };

std::string_view to_string(Algorithm a);
/// "gbql", "rbfq" or "rrt"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view text);

/// Q-value estimate backed by one boosted model. GBQL and RRT replace the
/// model every iteration; RBFQ appends one tree per action type, so its
/// value is the running sum over iterations. A fresh QFunction is 0.
struct QFunction {
  Algorithm kind = Algorithm::Gbql;
  boosting::BoostedModel model;

  double operator()(const logic::State& s, const logic::GroundAtom& a) const { return model.predict(s, a); }

  friend bool operator==(const QFunction&, const QFunction&) = default;
};

/// (1 - alpha) q_sa + alpha (reward + gamma max_next)
double bellman_target(double q_sa, double reward, double max_next, double alpha, double gamma);

/// reward + gamma max_next - q_sa
double bellman_residual(double q_sa, double reward, double max_next, double gamma);

/// max over legal actions in `state`; 0 when there are none.
double max_q(const QFunction& q, const domains::Domain& domain, const logic::State& state);

/// Max over a' is 0 for terminal transitions.
double bellman_target(const QFunction& q, const domains::Domain& domain, const Transition& t, double alpha,
                      double gamma);
double bellman_residual(const QFunction& q, const domains::Domain& domain, const Transition& t, double gamma);

/// Uniform action with probability epsilon, otherwise the argmax of q with
/// ties going to the lexicographically first action. Throws DomainError on
/// an empty action list.
logic::GroundAtom epsilon_greedy_action(const QFunction& q, const logic::State& state,
                                        std::span<const logic::GroundAtom> actions, double epsilon, Rng& rng);

/// Text form: "qfunction <algorithm>" followed by the model.
void write_q_function(std::ostream& out, const QFunction& q);
QFunction read_q_function(std::istream& in);

}  // namespace rfq::qlearn
