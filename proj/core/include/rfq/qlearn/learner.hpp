#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rfq/domains/domain.hpp"
#include "rfq/qlearn/q_function.hpp"
#include "rfq/qlearn/transition.hpp"
#include "rfq/rrt/example.hpp"

namespace rfq::qlearn {

struct LearnParams {
  int iterations = 20;      // N
  int stages = 5;           // M, boosting stages per GBQL iteration
  int trajectories = 5;     // p, episodes sampled per iteration
  double alpha = 0.95;
  double gamma = 0.99;
  double epsilon0 = 0.3;
  double epsilon_decay = 0.9;
  double epsilon_min = 0.05;
  double replay_fraction = 0.1;
  std::size_t replay_capacity = 10'000;
  int max_episode_steps = 50;
  double action_failure_prob = 0.0;
  rrt::TreeParams tree;     // GBQL and RRT trees
  int rbfq_tree_depth = 3;
  std::uint64_t seed = 0;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// max(epsilon_min, epsilon0 * decay^(iteration - 1)), iteration counted from 1.
double epsilon_at(const LearnParams& params, int iteration);

struct RolloutOptions {
  double epsilon = 0.0;
  int max_steps = 50;
  double action_failure_prob = 0.0;  // the chosen action leaves the state unchanged
};

/// One episode from `start` following epsilon-greedy on q until a goal or
/// max_steps transitions.
Trajectory rollout(const QFunction& q, const domains::Domain& domain, logic::State start,
                   const RolloutOptions& options, Rng& rng);

/// `p` episodes, each from a fresh start draw. Every episode picks its
/// object counts uniformly from `counts`.
std::vector<Trajectory> sample_trajectories(const QFunction& q, const domains::Domain& domain,
                                            const std::vector<domains::ObjectCounts>& counts, int p,
                                            const RolloutOptions& options, Rng& rng);

/// Episodes that follow a shortest path to the goal, for demonstrations.
std::vector<Trajectory> optimal_trajectories(const domains::Domain& domain,
                                             const std::vector<domains::ObjectCounts>& counts, int episodes,
                                             int max_steps, Rng& rng);

/// Fitted Q-iteration driver shared by GBQL, RBFQ and the single-tree
/// baseline. Iteration i draws its rollouts from a stream keyed by
/// (seed, i), so a run is a pure function of its inputs and can resume from
/// a checkpoint.
class FittedQLearner {
 public:
  FittedQLearner(const domains::Domain& domain, Algorithm algorithm, LearnParams params,
                 std::vector<domains::ObjectCounts> train_counts);

  /// Mixes `episodes` into the datasets of iterations 1..iterations.
  /// RBFQ ignores demonstrations.
  void set_demonstrations(std::vector<Trajectory> episodes, int iterations);

  /// Runs the next Q-iteration.
  void step();

  int iteration() const noexcept { return iteration_; }
  const QFunction& q() const noexcept { return q_; }
  const LearnParams& params() const noexcept { return params_; }
  Algorithm algorithm() const noexcept { return q_.kind; }

  /// Dataset E of the last iteration: fresh transitions, then replayed ones,
  /// then demonstrations.
  const std::vector<Transition>& training_set() const noexcept { return training_; }
  std::size_t fresh_count() const noexcept { return fresh_count_; }

  /// Iteration index, Q-function and replay buffer. The RNG needs no saving
  /// because every iteration reseeds from (seed, iteration).
  void save_checkpoint(std::ostream& out) const;
  void load_checkpoint(std::istream& in);

 private:
  const domains::Domain* domain_;
  LearnParams params_;
  std::vector<domains::ObjectCounts> train_counts_;
  QFunction q_;
  ReplayBuffer replay_;
  std::vector<Trajectory> demonstrations_;
  int demonstration_iterations_ = 0;
  int iteration_ = 0;
  std::vector<Transition> training_;
  std::size_t fresh_count_ = 0;
};

}  // namespace rfq::qlearn
