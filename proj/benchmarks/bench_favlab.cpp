#include <benchmark/benchmark.h>

#include <string>

#include "favlab/config.hpp"
#include "favlab/counting.hpp"
#include "favlab/expr.hpp"
#include "favlab/favard.hpp"
#include "favlab/ifs.hpp"
#include "favlab/projection.hpp"
#include "favlab/relclose.hpp"
#include "favlab/rotation.hpp"

using namespace favlab;

namespace {

const Ifs& fig1() {
  static const Ifs ifs = load_ifs(std::string(FAVLAB_CONFIG_DIR) + "/fig1.json");
  return ifs;
}

void BM_Compose(benchmark::State& state) {
  Word w;
  for (int i = 0; i < state.range(0); ++i) w.push_back(static_cast<Word::Symbol>(i % 3));
  for (auto _ : state) benchmark::DoNotOptimize(compose(fig1(), w));
}
BENCHMARK(BM_Compose)->Arg(8)->Arg(64);

void BM_LevelCover(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(LevelCover(fig1(), n).size());
}
BENCHMARK(BM_LevelCover)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ProjectionLength(benchmark::State& state) {
  const LevelCover cover(fig1(), static_cast<std::size_t>(state.range(0)));
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cover.length(theta));
    theta += 0.01;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cover.size()));
}
BENCHMARK(BM_ProjectionLength)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Favard(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(favard(fig1(), 8, 64).favard);
}
BENCHMARK(BM_Favard)->Unit(benchmark::kMillisecond);

void BM_PowerFamily(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(power_family(fig1(), Word{1}, Word{2}, 5).words.size());
}
BENCHMARK(BM_PowerFamily)->Unit(benchmark::kMillisecond);

void BM_FindPair(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_pair(fig1(), 0.2, [](double) { return 0.0; }).theta);
}
BENCHMARK(BM_FindPair)->Unit(benchmark::kMillisecond);

void BM_EpsilonNet(benchmark::State& state) {
  const double theta = kPi * (1.0 + std::sqrt(2.0));
  for (auto _ : state) benchmark::DoNotOptimize(epsilon_net(theta, 0.01, 1'000'000).p);
}
BENCHMARK(BM_EpsilonNet);

void BM_DiophantineProfile(benchmark::State& state) {
  const Real alpha = eval_expr("(1 + sqrt(5)) / 2");
  for (auto _ : state) benchmark::DoNotOptimize(diophantine_profile(alpha, 1'000'000, 1.0).tail_c_hat);
}
BENCHMARK(BM_DiophantineProfile)->Unit(benchmark::kMillisecond);

void BM_AvoidanceDP(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(avoidance_count(3, 4, 81).log_relaxed);
}
BENCHMARK(BM_AvoidanceDP)->Unit(benchmark::kMillisecond);

void BM_Visibility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(visibility_estimate(fig1(), {3, 3}, 1.0, n).covering_sum);
}
BENCHMARK(BM_Visibility)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
