#include "rfq/qlearn/learner.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/numeric.hpp"

namespace rfq::qlearn {

namespace {

// Stream tags for make_rng.
constexpr std::uint64_t kRolloutStream = 1;
constexpr std::uint64_t kReplayStream = 2;

void require(bool ok, const char* what) {
  if (!ok) {
    throw ConfigError(what);
  }
}

}  // namespace

void LearnParams::validate() const {
  require(iterations >= 1, "iterations must be at least 1");
  require(stages >= 1, "stages must be at least 1");
  require(trajectories >= 1, "trajectories must be at least 1");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
  require(epsilon0 >= 0.0 && epsilon0 <= 1.0, "epsilon0 must lie in [0, 1]");
  require(epsilon_decay > 0.0 && epsilon_decay <= 1.0, "epsilon_decay must lie in (0, 1]");
  require(epsilon_min >= 0.0 && epsilon_min <= 1.0, "epsilon_min must lie in [0, 1]");
  require(replay_fraction >= 0.0 && replay_fraction <= 1.0, "replay_fraction must lie in [0, 1]");
  require(max_episode_steps >= 0, "max_episode_steps must be non-negative");
  require(action_failure_prob >= 0.0 && action_failure_prob < 1.0, "action_failure_prob must lie in [0, 1)");
  require(rbfq_tree_depth >= 0, "rbfq_tree_depth must be non-negative");
  tree.validate();
}

double epsilon_at(const LearnParams& params, int iteration) {
  double e = params.epsilon0 * std::pow(params.epsilon_decay, iteration - 1);
  return std::max(params.epsilon_min, e);
}

Trajectory rollout(const QFunction& q, const domains::Domain& domain, logic::State start,
                   const RolloutOptions& options, Rng& rng) {
  Trajectory out;
  logic::State s = std::move(start);
  for (int k = 0; k < options.max_steps; ++k) {
    auto actions = domain.legal_actions(s);
    if (actions.empty()) {
      break;
    }
    Transition t;
    t.action = epsilon_greedy_action(q, s, actions, options.epsilon, rng);
    if (options.action_failure_prob > 0.0 && uniform01(rng) < options.action_failure_prob) {
      t.reward = domain.reward(s, t.action, s);
      t.next_state = s;
    } else {
      auto step = domain.step(s, t.action);
      t.reward = step.reward;
      t.next_state = std::move(step.next);
      t.terminal = step.terminal;
    }
    t.state = std::move(s);
    s = t.next_state;
    bool done = t.terminal;
    out.push_back(std::move(t));
    if (done) {
      break;
    }
  }
  return out;
}

std::vector<Trajectory> sample_trajectories(const QFunction& q, const domains::Domain& domain,
                                            const std::vector<domains::ObjectCounts>& counts, int p,
                                            const RolloutOptions& options, Rng& rng) {
  if (counts.empty()) {
    throw ConfigError("no object counts to sample instances from");
  }
  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(std::max(p, 0)));
  for (int j = 0; j < p; ++j) {
    const auto& c = counts[uniform_index(rng, counts.size())];
    out.push_back(rollout(q, domain, domain.initial_state(c, rng), options, rng));
  }
  return out;
}

std::vector<Trajectory> optimal_trajectories(const domains::Domain& domain,
                                             const std::vector<domains::ObjectCounts>& counts, int episodes,
                                             int max_steps, Rng& rng) {
  if (counts.empty()) {
    throw ConfigError("no object counts to sample instances from");
  }
  std::vector<Trajectory> out;
  for (int j = 0; j < episodes; ++j) {
    const auto& c = counts[uniform_index(rng, counts.size())];
    logic::State s = domain.initial_state(c, rng);
    Trajectory ep;
    for (int k = 0; k < max_steps && !domain.is_goal(s); ++k) {
      auto remaining = domain.optimal_steps(s);
      if (!remaining) {
        throw DomainError("optimal-steps search exceeded its budget");
      }
      bool moved = false;
      for (const auto& a : domain.legal_actions(s)) {
        auto step = domain.step(s, a);
        if (step.terminal || domain.optimal_steps(step.next) == *remaining - 1) {
          ep.push_back(Transition{s, a, step.reward, step.next, step.terminal});
          s = std::move(step.next);
          moved = true;
          break;
        }
      }
      if (!moved) {
        throw DomainError("no action decreases the distance to the goal");
      }
    }
    out.push_back(std::move(ep));
  }
  return out;
}

FittedQLearner::FittedQLearner(const domains::Domain& domain, Algorithm algorithm, LearnParams params,
                               std::vector<domains::ObjectCounts> train_counts)
    : domain_(&domain),
      params_(std::move(params)),
      train_counts_(std::move(train_counts)),
      replay_(params_.replay_capacity) {
  params_.validate();
  if (train_counts_.empty()) {
    throw ConfigError("no training instances");
  }
  q_.kind = algorithm;
}

void FittedQLearner::set_demonstrations(std::vector<Trajectory> episodes, int iterations) {
  demonstrations_ = std::move(episodes);
  demonstration_iterations_ = iterations;
}

void FittedQLearner::step() {
  const int i = ++iteration_;
  Rng rng = make_rng(params_.seed, {kRolloutStream, static_cast<std::uint64_t>(i)});
  RolloutOptions options{epsilon_at(params_, i), params_.max_episode_steps, params_.action_failure_prob};
  auto episodes = sample_trajectories(q_, *domain_, train_counts_, params_.trajectories, options, rng);

  training_.clear();
  for (auto& ep : episodes) {
    for (auto& t : ep) {
      training_.push_back(std::move(t));
    }
  }
  fresh_count_ = training_.size();
  auto replay_count = static_cast<std::size_t>(std::floor(params_.replay_fraction * static_cast<double>(fresh_count_)));
  Rng replay_rng = make_rng(params_.seed, {kReplayStream, static_cast<std::uint64_t>(i)});
  auto replayed = replay_.sample(replay_count, replay_rng);
  replay_.add(std::vector<Transition>(training_.begin(), training_.end()));
  training_.insert(training_.end(), replayed.begin(), replayed.end());
  if (q_.kind != Algorithm::Rbfq && i <= demonstration_iterations_) {
    for (const auto& ep : demonstrations_) {
      training_.insert(training_.end(), ep.begin(), ep.end());
    }
  }
  if (training_.empty()) {
    return;
  }

  std::vector<rrt::RegExample> examples;
  examples.reserve(training_.size());
  for (const auto& t : training_) {
    double target = q_.kind == Algorithm::Rbfq ? bellman_residual(q_, *domain_, t, params_.gamma)
                                               : bellman_target(q_, *domain_, t, params_.alpha, params_.gamma);
    examples.push_back(rrt::RegExample{t.state, t.action, target});
  }

  const auto& bias = domain_->bias();
  switch (q_.kind) {
    case Algorithm::Gbql:
      q_.model = boosting::tree_boost(examples, params_.stages, bias, params_.tree);
      break;
    case Algorithm::Rrt:
      q_.model = boosting::tree_boost(examples, 1, bias, params_.tree);
      break;
    case Algorithm::Rbfq: {
      rrt::TreeParams weak = params_.tree;
      weak.max_depth = params_.rbfq_tree_depth;
      auto fitted = boosting::tree_boost(examples, 1, bias, weak);
      for (const auto& a : fitted.actions()) {
        for (const auto& tree : a.trees) {
          q_.model.add_tree(tree);
        }
      }
      break;
    }
  }
}

namespace {

void write_transition(std::ostream& out, const Transition& t) {
  out << "transition " << format_double(t.reward) << ' ' << (t.terminal ? 1 : 0) << ' ' << logic::to_string(t.action)
      << '\n'
      << logic::format_state(t.state) << "next\n"
      << logic::format_state(t.next_state) << "end\n";
}

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (!logic::trim(line).empty()) {
      return std::string(logic::trim(line));
    }
  }
  throw ParseError("unexpected end of checkpoint");
}

logic::State read_facts_until(std::istream& in, std::string_view terminator) {
  logic::State s;
  for (std::string line = next_line(in); line != terminator; line = next_line(in)) {
    s.add(logic::parse_ground_atom(line));
  }
  return s;
}

Transition read_transition(std::istream& in) {
  std::istringstream header(next_line(in));
  std::string word;
  std::string reward;
  int terminal = 0;
  std::string action;
  if (!(header >> word >> reward >> terminal >> action) || word != "transition") {
    throw ParseError("expected 'transition <reward> <terminal> <action>'");
  }
  Transition t;
  t.reward = parse_double(reward);
  t.terminal = terminal != 0;
  t.action = logic::parse_ground_atom(action);
  t.state = read_facts_until(in, "next");
  t.next_state = read_facts_until(in, "end");
  return t;
}

}  // namespace

void FittedQLearner::save_checkpoint(std::ostream& out) const {
  out << "checkpoint " << to_string(q_.kind) << ' ' << iteration_ << '\n';
  write_q_function(out, q_);
  out << "replay " << replay_.size() << '\n';
  for (const auto& t : replay_.items()) {
    write_transition(out, t);
  }
}

void FittedQLearner::load_checkpoint(std::istream& in) {
  std::istringstream header(next_line(in));
  std::string word;
  std::string kind;
  int iteration = 0;
  if (!(header >> word >> kind >> iteration) || word != "checkpoint" || iteration < 0) {
    throw ParseError("expected 'checkpoint <algorithm> <iteration>'");
  }
  if (kind != to_string(q_.kind)) {
    throw ConfigError("checkpoint was written by " + kind + ", not " + std::string(to_string(q_.kind)));
  }
  QFunction q = read_q_function(in);
  std::istringstream replay_header(next_line(in));
  std::size_t n = 0;
  if (!(replay_header >> word >> n) || word != "replay") {
    throw ParseError("expected 'replay <count>'");
  }
  ReplayBuffer replay(params_.replay_capacity);
  for (std::size_t k = 0; k < n; ++k) {
    replay.add(read_transition(in));
  }
  q_ = std::move(q);
  replay_ = std::move(replay);
  iteration_ = iteration;
  training_.clear();
  fresh_count_ = 0;
}

}  // namespace rfq::qlearn
