#include <benchmark/benchmark.h>

#include <random>

#include "curvebound/eliminate.hpp"
#include "curvebound/enumerate.hpp"
#include "curvebound/ffcurve.hpp"
#include "curvebound/gf2m.hpp"

using namespace curvebound;

static void BM_EnumerateGenus8P1_24(benchmark::State& state) {
  ConstraintSet cs{4, 8, {{1, 24}}};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_real_weil(cs));
}
BENCHMARK(BM_EnumerateGenus8P1_24)->Unit(benchmark::kMillisecond);

static void BM_EnumerateSmall(benchmark::State& state) {
  ConstraintSet cs{4, static_cast<int>(state.range(0)), {}};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_real_weil(cs));
}
BENCHMARK(BM_EnumerateSmall)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_EliminateGenus8(benchmark::State& state) {
  const auto candidates = enumerate_real_weil(ConstraintSet{4, 8, {{1, 24}}});
  for (auto _ : state) benchmark::DoNotOptimize(eliminate_all(candidates, 4));
}
BENCHMARK(BM_EliminateGenus8)->Unit(benchmark::kMillisecond);

static void BM_Resultant(benchmark::State& state) {
  const auto candidates = enumerate_real_weil(ConstraintSet{4, 8, {{1, 24}}});
  for (auto _ : state) {
    for (size_t i = 1; i < candidates.size(); ++i) benchmark::DoNotOptimize(resultant(candidates[i - 1], candidates[i]));
  }
}
BENCHMARK(BM_Resultant);

static void BM_GFMul(benchmark::State& state) {
  const GFContext& F = GFContext::get(static_cast<int>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<GFElem> xs(1024);
  for (auto& x : xs) x = {static_cast<std::uint32_t>(rng() % F.size())};
  for (auto _ : state) {
    GFElem acc = F.one();
    for (const auto& x : xs) acc = F.add(F.mul(acc, x), x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
}
BENCHMARK(BM_GFMul)->Arg(2)->Arg(8)->Arg(16);

static void BM_PlacesD(benchmark::State& state) {
  const KummerCover cover;
  for (auto _ : state) benchmark::DoNotOptimize(cover.places_D(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PlacesD)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_PointCountsC(benchmark::State& state) {
  const KummerCover cover;
  for (auto _ : state) benchmark::DoNotOptimize(cover.point_counts_C(8));
}
BENCHMARK(BM_PointCountsC)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
