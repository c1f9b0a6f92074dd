#include <benchmark/benchmark.h>

#include "rfq/domains/domain.hpp"
#include "rfq/logic/query.hpp"
#include "rfq/logic/text.hpp"
#include "rfq/random.hpp"

namespace {

using namespace rfq;

logic::State tower_state(int blocks) {
  auto domain = domains::make_domain("unstack");
  Rng rng = make_rng(1, {});
  return domain->initial_state({blocks, 0, 0, 0}, rng);
}

void BM_MatchChain(benchmark::State& st) {
  const auto s = tower_state(static_cast<int>(st.range(0)));
  const auto c = logic::parse_conjunction("on(X,Y), on(Y,Z), !clear(Y)");
  for (auto _ : st) {
    benchmark::DoNotOptimize(logic::match(c, s));
  }
}
BENCHMARK(BM_MatchChain)->Arg(4)->Arg(8)->Arg(16);

void BM_FirstMatch(benchmark::State& st) {
  const auto s = tower_state(static_cast<int>(st.range(0)));
  const auto c = logic::parse_conjunction("on(X,Y), clear(X), heightlessthan(Y,X)");
  for (auto _ : st) {
    benchmark::DoNotOptimize(logic::first_match(c, s));
  }
}
BENCHMARK(BM_FirstMatch)->Arg(4)->Arg(8)->Arg(16);

void BM_LegalActions(benchmark::State& st) {
  auto domain = domains::make_domain("logistics");
  Rng rng = make_rng(2, {});
  const auto s = domain->initial_state({0, 5, 3, 4}, rng);
  for (auto _ : st) {
    benchmark::DoNotOptimize(domain->legal_actions(s));
  }
}
BENCHMARK(BM_LegalActions);

}  // namespace
