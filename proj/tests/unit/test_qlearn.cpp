#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "generators.hpp"
#include "rfq/boosting/boosted_model.hpp"
#include "rfq/domains/blocks_world.hpp"
#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/qlearn/learner.hpp"
#include "toy_domains.hpp"

namespace {

using namespace rfq;
using namespace rfq::qlearn;
using logic::parse_ground_atom;

// Q = 1 for moves onto the floor, 0 otherwise.
QFunction floor_lover() {
  using Node = rrt::RelationalTree::Node;
  std::vector<Node> nodes(3);
  nodes[0].test = logic::parse_conjunction("isFloor(B)");
  nodes[0].satisfied = 1;
  nodes[0].failed = 2;
  nodes[1].value = 1.0;
  nodes[2].value = 0.0;
  QFunction q;
  q.model.add_tree(rrt::RelationalTree(logic::Predicate::make("move", 2), nodes));
  return q;
}

std::vector<domains::ObjectCounts> blocks(int n) { return {domains::ObjectCounts{n, 0, 0, 0}}; }

TEST(Bellman, TargetArithmetic) {
  EXPECT_EQ(bellman_target(0.0, 2.0, 0.0, 1.0, 0.99), 2.0);
  EXPECT_NEAR(bellman_target(1.0, -0.2, 2.0, 0.9, 0.99), 1.702, 1e-12);
  EXPECT_EQ(bellman_target(0.0, 10.0, 0.0, 1.0, 0.99), 10.0);
  EXPECT_EQ(bellman_target(3.7, -1.25, 8.0, 1.0, 0.0), -1.25);
}

TEST(Bellman, ResidualArithmetic) {
  EXPECT_NEAR(bellman_residual(1.0, -0.2, 1.0, 0.9), -0.3, 1e-12);
  EXPECT_EQ(bellman_residual(0.0, 2.0, 0.0, 0.99), 2.0);
}

TEST(Bellman, TerminalTransitionsIgnoreTheNextState) {
  auto d = domains::make_domain("stack");
  const auto& bw = dynamic_cast<const domains::BlocksWorld&>(*d);
  QFunction q = floor_lover();
  Transition t{bw.make_state({{"a", "b"}, {"c"}}), parse_ground_atom("move(c,b)"), 2.0,
               bw.make_state({{"a", "b", "c"}}), true};
  EXPECT_EQ(max_q(q, *d, t.next_state), 0.0);
  EXPECT_EQ(bellman_target(q, *d, t, 1.0, 0.99), 2.0);
  Transition u{bw.make_state({{"a", "b"}, {"c"}}), parse_ground_atom("move(b,c)"), -0.5,
               bw.make_state({{"a"}, {"c", "b"}}), false};
  EXPECT_EQ(max_q(q, *d, u.next_state), 1.0);
  EXPECT_NEAR(bellman_residual(q, *d, u, 0.9), -0.5 + 0.9 * 1.0 - 0.0, 1e-15);
}

TEST(EpsilonGreedy, GreedyPicksArgmax) {
  auto d = domains::make_domain("stack");
  const auto& bw = dynamic_cast<const domains::BlocksWorld&>(*d);
  auto s = bw.make_state({{"a", "b"}, {"c"}});
  auto actions = d->legal_actions(s);
  Rng rng = make_rng(1, {});
  EXPECT_EQ(logic::to_string(epsilon_greedy_action(floor_lover(), s, actions, 0.0, rng)), "move(b,floor)");
}

TEST(EpsilonGreedy, TiesGoToTheFirstAction) {
  auto d = domains::make_domain("stack");
  const auto& bw = dynamic_cast<const domains::BlocksWorld&>(*d);
  auto s = bw.make_state({{"a", "b"}, {"c"}});
  auto actions = d->legal_actions(s);
  Rng rng = make_rng(2, {});
  EXPECT_EQ(logic::to_string(epsilon_greedy_action(QFunction{}, s, actions, 0.0, rng)), "move(b,c)");
}

TEST(EpsilonGreedy, FullExplorationIsUniform) {
  auto d = domains::make_domain("stack");
  const auto& bw = dynamic_cast<const domains::BlocksWorld&>(*d);
  auto s = bw.make_state({{"a"}, {"b"}, {"c"}});
  auto actions = d->legal_actions(s);
  ASSERT_EQ(actions.size(), 6u);
  Rng rng = make_rng(3, {});
  std::map<std::string, int> counts;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) {
    ++counts[logic::to_string(epsilon_greedy_action(floor_lover(), s, actions, 1.0, rng))];
  }
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  const double expected = draws / 6.0;
  for (const auto& [a, n] : counts) {
    chi2 += (n - expected) * (n - expected) / expected;
  }
  EXPECT_LT(chi2, 20.52);  // 5 dof, p = 0.001
}

TEST(EpsilonGreedy, NoActionsThrows) {
  Rng rng = make_rng(4, {});
  EXPECT_THROW(epsilon_greedy_action(QFunction{}, logic::State{}, {}, 0.5, rng), DomainError);
}

TEST(Schedule, MonotoneAndFloored) {
  LearnParams p;
  double prev = epsilon_at(p, 1);
  EXPECT_EQ(prev, p.epsilon0);
  for (int i = 2; i <= 100; ++i) {
    double e = epsilon_at(p, i);
    EXPECT_LE(e, prev);
    EXPECT_GE(e, p.epsilon_min);
    prev = e;
  }
  EXPECT_EQ(epsilon_at(p, 100), p.epsilon_min);
}

TEST(Trajectories, ChainAndStopAtGoalOrCap) {
  auto d = domains::make_domain("stack");
  Rng rng = make_rng(5, {});
  RolloutOptions opts{1.0, 50, 0.0};
  auto eps = sample_trajectories(QFunction{}, *d, blocks(3), 5, opts, rng);
  ASSERT_EQ(eps.size(), 5u);
  for (const auto& ep : eps) {
    ASSERT_FALSE(ep.empty());
    for (std::size_t k = 0; k + 1 < ep.size(); ++k) {
      EXPECT_EQ(ep[k].next_state, ep[k + 1].state);
      EXPECT_FALSE(ep[k].terminal);
    }
    EXPECT_TRUE(ep.back().terminal || ep.size() == 50u);
    EXPECT_EQ(ep.back().terminal, d->is_goal(ep.back().next_state));
  }
}

TEST(Trajectories, ZeroCapGivesEmptyEpisodes) {
  auto d = domains::make_domain("stack");
  Rng rng = make_rng(6, {});
  auto eps = sample_trajectories(QFunction{}, *d, blocks(4), 3, RolloutOptions{1.0, 0, 0.0}, rng);
  ASSERT_EQ(eps.size(), 3u);
  for (const auto& ep : eps) {
    EXPECT_TRUE(ep.empty());
  }
}

TEST(Trajectories, SeededRepeatability) {
  auto d = domains::make_domain("logistics");
  auto counts = std::vector<domains::ObjectCounts>{d->parse_counts("3:2:2")};
  Rng r1 = make_rng(7, {1});
  Rng r2 = make_rng(7, {1});
  auto a = sample_trajectories(QFunction{}, *d, counts, 4, RolloutOptions{0.5, 20, 0.0}, r1);
  auto b = sample_trajectories(QFunction{}, *d, counts, 4, RolloutOptions{0.5, 20, 0.0}, r2);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].size(), b[i].size());
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      EXPECT_EQ(a[i][k].action, b[i][k].action);
      EXPECT_EQ(a[i][k].next_state, b[i][k].next_state);
    }
  }
}

TEST(Trajectories, ActionFailureKeepsTheState) {
  auto d = domains::make_domain("stack");
  Rng rng = make_rng(8, {});
  auto ep = rollout(QFunction{}, *d, d->initial_state(domains::ObjectCounts{4, 0, 0, 0}, rng),
                    RolloutOptions{1.0, 30, 0.999999}, rng);
  for (const auto& t : ep) {
    EXPECT_EQ(t.state, t.next_state);
    EXPECT_FALSE(t.terminal);
  }
}

TEST(Expert, StepsEqualOptimalDistance) {
  auto d = domains::make_domain("unstack");
  Rng rng = make_rng(9, {});
  auto eps = optimal_trajectories(*d, blocks(5), 10, 50, rng);
  for (const auto& ep : eps) {
    ASSERT_FALSE(ep.empty());
    EXPECT_EQ(d->optimal_steps(ep.front().state), static_cast<int>(ep.size()));
    EXPECT_TRUE(ep.back().terminal);
  }
  std::stringstream buf;
  write_episodes(buf, eps);
  auto again = read_episodes(buf, *d);
  ASSERT_EQ(again.size(), eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    ASSERT_EQ(again[i].size(), eps[i].size());
    for (std::size_t k = 0; k < eps[i].size(); ++k) {
      EXPECT_EQ(again[i][k].state, eps[i][k].state);
      EXPECT_EQ(again[i][k].action, eps[i][k].action);
      EXPECT_EQ(again[i][k].reward, eps[i][k].reward);
    }
  }
}

TEST(Replay, BufferIsFifo) {
  ReplayBuffer buf(3);
  for (int k = 0; k < 5; ++k) {
    Transition t;
    t.reward = k;
    buf.add(t);
  }
  ASSERT_EQ(buf.size(), 3u);
  EXPECT_EQ(buf.items().front().reward, 2.0);
  Rng rng = make_rng(10, {});
  EXPECT_EQ(buf.sample(2, rng).size(), 2u);
  EXPECT_EQ(buf.sample(10, rng).size(), 3u);
}

LearnParams small_params(std::uint64_t seed) {
  LearnParams p;
  p.seed = seed;
  p.iterations = 6;
  p.max_episode_steps = 20;
  return p;
}

TEST(Learner, ReplayComposition) {
  auto d = domains::make_domain("stack");
  FittedQLearner learner(*d, Algorithm::Gbql, small_params(11), blocks(4));
  learner.step();
  EXPECT_EQ(learner.training_set().size(), learner.fresh_count());
  std::size_t seen = learner.fresh_count();
  for (int i = 2; i <= 4; ++i) {
    learner.step();
    const std::size_t fresh = learner.fresh_count();
    const std::size_t want = fresh / 10;
    EXPECT_EQ(learner.training_set().size(), fresh + std::min(want, seen));
    seen += fresh;
  }
  LearnParams none = small_params(11);
  none.replay_fraction = 0.0;
  FittedQLearner plain(*d, Algorithm::Gbql, none, blocks(4));
  for (int i = 0; i < 3; ++i) {
    plain.step();
    EXPECT_EQ(plain.training_set().size(), plain.fresh_count());
  }
}

std::vector<rrt::RegExample> examples_with(const std::vector<Transition>& data, auto target) {
  std::vector<rrt::RegExample> out;
  for (const auto& t : data) {
    out.push_back(rrt::RegExample{t.state, t.action, target(t)});
  }
  return out;
}

TEST(Learner, FirstIterationFitsImmediateRewards) {
  auto d = domains::make_domain("stack");
  for (Algorithm alg : {Algorithm::Gbql, Algorithm::Rbfq, Algorithm::Rrt}) {
    LearnParams p = small_params(12);
    p.alpha = 1.0;
    FittedQLearner learner(*d, alg, p, blocks(3));
    learner.step();
    auto ex = examples_with(learner.training_set(), [](const Transition& t) { return t.reward; });
    rrt::TreeParams tree = p.tree;
    int stages = alg == Algorithm::Gbql ? p.stages : 1;
    if (alg == Algorithm::Rbfq) {
      tree.max_depth = p.rbfq_tree_depth;
    }
    EXPECT_EQ(learner.q().model, boosting::tree_boost(ex, stages, d->bias(), tree)) << to_string(alg);
  }
}

TEST(Learner, GbqlReplacesItsModel) {
  auto d = domains::make_domain("stack");
  LearnParams p = small_params(13);
  FittedQLearner learner(*d, Algorithm::Gbql, p, blocks(4));
  for (int i = 1; i <= 4; ++i) {
    QFunction before = learner.q();
    learner.step();
    auto ex = examples_with(learner.training_set(), [&](const Transition& t) {
      return bellman_target(before, *d, t, p.alpha, p.gamma);
    });
    auto expected = boosting::tree_boost(ex, p.stages, d->bias(), p.tree);
    EXPECT_EQ(learner.q().model, expected) << "iteration " << i;
    EXPECT_LE(learner.q().model.tree_count(), static_cast<std::size_t>(p.stages));

    std::stringstream buf;
    write_q_function(buf, learner.q());
    QFunction reloaded = read_q_function(buf);
    Rng rng = make_rng(14, {static_cast<std::uint64_t>(i)});
    for (int k = 0; k < 50; ++k) {
      auto [s, a] = testkit::random_blocks_probe(*d, rng);
      EXPECT_EQ(reloaded(s, a), expected.predict(s, a));
    }
  }
}

TEST(Learner, RbfqAppendsOneTreePerIteration) {
  auto d = domains::make_domain("stack");
  LearnParams p = small_params(15);
  FittedQLearner learner(*d, Algorithm::Rbfq, p, blocks(4));
  Rng rng = make_rng(16, {});
  for (int i = 1; i <= 5; ++i) {
    QFunction before = learner.q();
    learner.step();
    auto trees = learner.q().model.trees_for(logic::Predicate::make("move", 2));
    ASSERT_EQ(trees.size(), static_cast<std::size_t>(i));
    for (std::size_t k = 0; k + 1 < trees.size(); ++k) {
      EXPECT_EQ(trees[k], before.model.trees_for(logic::Predicate::make("move", 2))[k]);
    }
    EXPECT_LE(trees.back().depth(), static_cast<std::size_t>(p.rbfq_tree_depth));
    for (int k = 0; k < 50; ++k) {
      auto [s, a] = testkit::random_blocks_probe(*d, rng);
      EXPECT_EQ(learner.q()(s, a), before(s, a) + trees.back().predict(s, a));
    }
  }
}

TEST(Learner, RrtIsGbqlWithOneStage) {
  auto d = domains::make_domain("stack");
  LearnParams p = small_params(17);
  p.stages = 1;
  FittedQLearner gbql(*d, Algorithm::Gbql, p, blocks(4));
  FittedQLearner rrt(*d, Algorithm::Rrt, small_params(17), blocks(4));
  for (int i = 0; i < 5; ++i) {
    gbql.step();
    rrt.step();
    EXPECT_EQ(gbql.q().model, rrt.q().model);
    ASSERT_EQ(gbql.training_set().size(), rrt.training_set().size());
  }
}

TEST(Learner, RbfqResidualsShrinkOnAChain) {
  testkit::ChainDomain chain(1, -1.0, 3.0);
  LearnParams p = small_params(18);
  p.gamma = 0.9;
  p.tree.min_leaf = 1;
  FittedQLearner learner(chain, Algorithm::Rbfq, p, {domains::ObjectCounts{}});
  Transition t{chain.at(0), parse_ground_atom("go(p0)"), 3.0, chain.at(1), true};
  double prev = std::abs(bellman_residual(learner.q(), chain, t, p.gamma));
  EXPECT_EQ(prev, 3.0);
  for (int i = 0; i < 4; ++i) {
    learner.step();
    double cur = std::abs(bellman_residual(learner.q(), chain, t, p.gamma));
    EXPECT_LE(cur, prev);
    prev = cur;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(Learner, CheckpointResumeMatchesAnUninterruptedRun) {
  auto d = domains::make_domain("logistics");
  std::vector<domains::ObjectCounts> counts{d->parse_counts("3:2:2")};
  for (Algorithm alg : {Algorithm::Gbql, Algorithm::Rbfq}) {
    LearnParams p = small_params(19);
    p.replay_capacity = 25;
    FittedQLearner straight(*d, alg, p, counts);
    for (int i = 0; i < 5; ++i) {
      straight.step();
    }
    FittedQLearner first(*d, alg, p, counts);
    first.step();
    first.step();
    std::stringstream ckpt;
    first.save_checkpoint(ckpt);
    FittedQLearner second(*d, alg, p, counts);
    second.load_checkpoint(ckpt);
    EXPECT_EQ(second.iteration(), 2);
    for (int i = 0; i < 3; ++i) {
      second.step();
    }
    EXPECT_EQ(second.q(), straight.q()) << to_string(alg);
  }
}

TEST(Learner, CheckpointOfAnotherAlgorithmIsRejected) {
  auto d = domains::make_domain("stack");
  FittedQLearner gbql(*d, Algorithm::Gbql, small_params(20), blocks(3));
  gbql.step();
  std::stringstream ckpt;
  gbql.save_checkpoint(ckpt);
  FittedQLearner rbfq(*d, Algorithm::Rbfq, small_params(20), blocks(3));
  EXPECT_THROW(rbfq.load_checkpoint(ckpt), ConfigError);
}

TEST(Learner, DemonstrationsOnlyForBoostedReplacement) {
  auto d = domains::make_domain("unstack");
  Rng rng = make_rng(21, {});
  auto demos = optimal_trajectories(*d, blocks(4), 3, 50, rng);
  std::size_t demo_steps = 0;
  for (const auto& ep : demos) {
    demo_steps += ep.size();
  }
  for (Algorithm alg : {Algorithm::Gbql, Algorithm::Rbfq}) {
    FittedQLearner learner(*d, alg, small_params(22), blocks(4));
    learner.set_demonstrations(demos, 1);
    learner.step();
    std::size_t extra = alg == Algorithm::Gbql ? demo_steps : 0;
    EXPECT_EQ(learner.training_set().size(), learner.fresh_count() + extra);
    learner.step();
    EXPECT_LT(learner.training_set().size(), learner.fresh_count() + learner.fresh_count() / 10 + 1);
  }
}

TEST(Algorithm, NamesRoundTrip) {
  for (Algorithm a : {Algorithm::Gbql, Algorithm::Rbfq, Algorithm::Rrt}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_algorithm("dqn"), ConfigError);
}

TEST(Params, Validation) {
  LearnParams p;
  EXPECT_NO_THROW(p.validate());
  p.gamma = 1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = LearnParams{};
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = LearnParams{};
  p.iterations = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
