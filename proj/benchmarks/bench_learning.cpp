#include <benchmark/benchmark.h>

#include "rfq/boosting/boosted_model.hpp"
#include "rfq/domains/domain.hpp"
#include "rfq/qlearn/learner.hpp"
#include "rfq/rrt/learner.hpp"

namespace {

using namespace rfq;

// Examples from uniform-exploration rollouts, target = immediate reward.
std::vector<rrt::RegExample> rollout_examples(const domains::Domain& domain, domains::ObjectCounts counts,
                                              std::size_t n) {
  Rng rng = make_rng(3, {});
  qlearn::QFunction zero;
  qlearn::RolloutOptions opts{1.0, 30, 0.0};
  std::vector<rrt::RegExample> out;
  while (out.size() < n) {
    for (const auto& t : qlearn::rollout(zero, domain, domain.initial_state(counts, rng), opts, rng)) {
      out.push_back({t.state, t.action, t.reward});
    }
  }
  out.resize(n);
  return out;
}

void BM_LearnTree(benchmark::State& st) {
  auto domain = domains::make_domain("stack");
  auto data = rollout_examples(*domain, {5, 0, 0, 0}, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(rrt::learn_tree(data, domain->bias(), {}));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_LearnTree)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_TreeBoostLogistics(benchmark::State& st) {
  auto domain = domains::make_domain("logistics");
  auto data = rollout_examples(*domain, {0, 3, 2, 2}, 300);
  for (auto _ : st) {
    benchmark::DoNotOptimize(boosting::tree_boost(data, static_cast<int>(st.range(0)), domain->bias(), {}));
  }
}
BENCHMARK(BM_TreeBoostLogistics)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_LearnerIteration(benchmark::State& st) {
  auto domain = domains::make_domain("stack");
  const auto alg = static_cast<qlearn::Algorithm>(st.range(0));
  for (auto _ : st) {
    st.PauseTiming();
    qlearn::LearnParams p;
    p.iterations = 3;
    qlearn::FittedQLearner learner(*domain, alg, p, {{4, 0, 0, 0}, {5, 0, 0, 0}});
    st.ResumeTiming();
    for (int i = 0; i < p.iterations; ++i) {
      learner.step();
    }
  }
}
BENCHMARK(BM_LearnerIteration)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
