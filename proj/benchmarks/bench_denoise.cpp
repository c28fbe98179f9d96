#include <benchmark/benchmark.h>

#include "sdude/channel_sim.hpp"
#include "sdude/denoise.hpp"
#include "sdude/geometry.hpp"
#include "sdude/synthetic.hpp"

namespace {

sdude::Grid noisy_composite(int side) {
  const auto clean = sdude::synthesize_composite(side, sdude::default_composite(), 1);
  return sdude::corrupt(clean, sdude::ChannelModel::bsc(0.1), 1);
}

const sdude::EstimatedLossTable& bsc_table() {
  static const auto table =
      sdude::build_estimated_loss(sdude::ChannelModel::bsc(0.1), sdude::LossFunction::hamming(2));
  return table;
}

void BM_Sdude2dSide(benchmark::State& state) {
  const auto noisy = noisy_composite(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sdude::denoise(noisy, {2, 8, sdude::Mode::Sdude2d}, bsc_table()));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_Sdude2dSide)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Sdude2dBudget(benchmark::State& state) {
  const auto noisy = noisy_composite(128);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sdude::denoise(noisy, {2, m, sdude::Mode::Sdude2d}, bsc_table()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sdude2dBudget)->RangeMultiplier(2)->Range(1, 64)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Dude2d(benchmark::State& state) {
  const auto noisy = noisy_composite(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sdude::denoise(noisy, {2, 0, sdude::Mode::Dude2d}, bsc_table()));
}
BENCHMARK(BM_Dude2d)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_PHOrder(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sdude::ph_order(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PHOrder)->DenseRange(6, 10, 2);

} // namespace

BENCHMARK_MAIN();
