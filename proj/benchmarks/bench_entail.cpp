#include <benchmark/benchmark.h>

#include "cli.hpp"
#include "olsub/entail.hpp"
#include "olsub/normalize.hpp"

namespace {

using namespace olsub;

// One fresh engine per iteration, so clause generation is included.
void BM_CheckSnTn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TermUniverse u;
  const auto st = cli::build_sn_tn(u, n);
  entail::Stats stats;
  for (auto _ : state) {
    const auto v = entail::check(u, st.s, st.t);
    benchmark::DoNotOptimize(v.provable);
    stats = v.stats;
  }
  state.counters["clauses"] = static_cast<double>(stats.clauses);
  state.counters["sequents"] = static_cast<double>(stats.sequents);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckSnTn)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNSquared);

// Repeated queries on a warm engine are answered from its proved set.
void BM_CheckSnTnWarm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TermUniverse u;
  const auto st = cli::build_sn_tn(u, n);
  entail::Engine engine(u);
  engine.leq(st.s, st.t);
  for (auto _ : state) benchmark::DoNotOptimize(engine.leq(st.t, st.s));
}
BENCHMARK(BM_CheckSnTnWarm)->Arg(32)->Arg(128);

void BM_NormalizeSnTn(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  TermUniverse u;
  const auto st = cli::build_sn_tn(u, n);
  const TermId t = u.join(st.s, u.negation(st.t));
  for (auto _ : state) {
    normalize::Normalizer norm(u);
    benchmark::DoNotOptimize(norm.normalize_ol(t));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NormalizeSnTn)->RangeMultiplier(2)->Range(8, 64)->Complexity();

}  // namespace

BENCHMARK_MAIN();
