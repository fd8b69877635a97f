#include "ringprob/closedform.hpp"
#include "ringprob/probability.hpp"
#include "ringprob/ringspec.hpp"
#include "ringprob/structure.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ringprob;

const Ring& m3f2() {
  static const Ring ring = parse_ring_spec("M3(GF2)");
  return ring;
}

void BM_PairCounts(benchmark::State& state) {
  const Ring& ring = m3f2();
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pair_counts(ring, workers));
  state.SetItemsProcessed(state.iterations() * ring.size() * ring.size());
}
BENCHMARK(BM_PairCounts)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_AnnsumCounts(benchmark::State& state) {
  const Ring& ring = m3f2();
  for (auto _ : state) benchmark::DoNotOptimize(annsum_counts(ring));
}
BENCHMARK(BM_AnnsumCounts);

void BM_ProbBruteSingle(benchmark::State& state) {
  const Ring& ring = m3f2();
  for (auto _ : state) benchmark::DoNotOptimize(prob_brute(ring, 0));
}
BENCHMARK(BM_ProbBruteSingle);

void BM_ClassifyLocal(benchmark::State& state) {
  const Ring ring = parse_ring_spec(state.range(0) == 0 ? "M3(GF2)" : "chain(3,3)");
  for (auto _ : state) benchmark::DoNotOptimize(classify_local(ring));
}
BENCHMARK(BM_ClassifyLocal)->Arg(0)->Arg(1);

void BM_Spectrum(benchmark::State& state) {
  const Ring ring = parse_ring_spec("M2(GF4)");
  const auto report = classify_local(ring);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(ring, report, 1));
}
BENCHMARK(BM_Spectrum);

void BM_MatrixFormula(benchmark::State& state) {
  const auto dim = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prob_matrix_formula({3, dim, 0}));
}
BENCHMARK(BM_MatrixFormula)->Arg(2)->Arg(4)->Arg(8);

void BM_ZnFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prob_zn(1000003ULL * 1000033ULL, 1000003ULL * 5));
}
BENCHMARK(BM_ZnFormula);

void BM_RingConstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_ring_spec("Z2 x M2(GF2)"));
}
BENCHMARK(BM_RingConstruction);

}  // namespace

BENCHMARK_MAIN();
