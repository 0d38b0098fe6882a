#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "fourfactors/fourfactors.hpp"

using namespace fourfactors;

namespace {

TeamProfile reference() {
  return TeamProfile{FourFactors{.545, .208, .268, .138}, ShootingPct{.475, .782}, .42};
}

const SimResult& season() {
  static const SimResult sim = [] {
    GenParams p;
    p.n_possessions = 123000;
    p.p_orb_ft = 0.076;
    return simulate(p);
  }();
  return sim;
}

void BM_OrtgFactors(benchmark::State& state) {
  auto p = reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p);
    benchmark::DoNotOptimize(ortg_factors(p));
  }
}
BENCHMARK(BM_OrtgFactors);

void BM_OrtgGradient(benchmark::State& state) {
  auto p = reference();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p);
    benchmark::DoNotOptimize(ortg_gradient(p));
  }
}
BENCHMARK(BM_OrtgGradient);

void BM_FiniteDiffGradient(benchmark::State& state) {
  const auto p = reference();
  for (auto _ : state) benchmark::DoNotOptimize(finite_diff_gradient(p, 1e-6));
}
BENCHMARK(BM_FiniteDiffGradient);

void BM_SeasonReference(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> jitter(-0.02, 0.02);
  std::vector<TeamProfile> teams;
  for (int i = 0; i < 30; ++i) {
    auto p = reference();
    p.factors.efg += jitter(rng);
    p.factors.orb_pct += jitter(rng);
    teams.push_back(p);
  }
  for (auto _ : state) {
    const auto ref = season_reference(teams);
    benchmark::DoNotOptimize(weighted_sensitivities(ortg_gradient(ref.reference), ref.distribution));
  }
}
BENCHMARK(BM_SeasonReference);

void BM_Simulate(benchmark::State& state) {
  GenParams p;
  p.n_possessions = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CountPossessions(benchmark::State& state) {
  const auto& games = season().games;
  for (auto _ : state) benchmark::DoNotOptimize(count_possessions(games));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(games.size()));
}
BENCHMARK(BM_CountPossessions)->Unit(benchmark::kMillisecond);

void BM_ParsePbp(benchmark::State& state) {
  std::ostringstream out;
  write_pbp(out, season().games);
  const std::string text = out.str();
  for (auto _ : state) benchmark::DoNotOptimize(parse_pbp(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParsePbp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
