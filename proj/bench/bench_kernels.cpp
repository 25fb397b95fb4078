// Parallel kernels against their serial reference versions.
//
//   medaug_bench --benchmark_filter=Scale
//
// The thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "medaug/geometric.hpp"
#include "medaug/metrics.hpp"
#include "medaug/mixup.hpp"
#include "medaug/photometric.hpp"
#include "medaug/reference.hpp"

namespace {

using namespace medaug;

ImageBuffer make_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(side) * side * channels);
  for (auto& v : s) v = static_cast<std::uint8_t>(dist(gen));
  return ImageBuffer(side, side, channels, std::move(s));
}

BinaryMask make_mask(int side, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution fg(0.3);
  std::vector<std::uint8_t> s(static_cast<std::size_t>(side) * side);
  for (auto& v : s) v = fg(gen) ? 255 : 0;
  return BinaryMask(side, side, std::move(s));
}

void set_pixels(benchmark::State& state, int side) {
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(side) * side);
}

template <bool Parallel>
void BM_Scale(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto img = make_image(side, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? scale(img, 1.2) : reference::scale(img, 1.2));
  }
  set_pixels(state, side);
}

template <bool Parallel>
void BM_Shear(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto img = make_image(side, 3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? shear_horizontal(img, 0.2, 0)
                                      : reference::shear_horizontal(img, 0.2, 0));
  }
  set_pixels(state, side);
}

template <bool Parallel>
void BM_Rotate(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto img = make_image(side, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? rotate90_cw(img) : reference::rotate90_cw(img));
  }
  set_pixels(state, side);
}

template <bool Parallel>
void BM_Equalize(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto img = make_image(side, 3, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? equalize_histogram_luma(img) : reference::equalize_histogram_luma(img));
  }
  set_pixels(state, side);
}

template <bool Parallel>
void BM_Mixup(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const SamplePair a(make_image(side, 3, 5), make_mask(side, 6));
  const SamplePair b(make_image(side, 3, 7), make_mask(side, 8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? mixup(a, b, 0.37, MixupMode::Global)
                                      : reference::mixup(a, b, 0.37, MixupMode::Global));
  }
  set_pixels(state, side);
}

template <bool Parallel>
void BM_Dice(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto p = make_mask(side, 9);
  const auto t = make_mask(side, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? dice(p, t) : reference::dice(p, t));
  }
  set_pixels(state, side);
}

#define MEDAUG_BENCH_PAIR(fn)                                                           \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond); \
  BENCHMARK(fn<true>)->Name(#fn "/omp")->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond)

MEDAUG_BENCH_PAIR(BM_Scale);
MEDAUG_BENCH_PAIR(BM_Shear);
MEDAUG_BENCH_PAIR(BM_Rotate);
MEDAUG_BENCH_PAIR(BM_Equalize);
MEDAUG_BENCH_PAIR(BM_Mixup);
MEDAUG_BENCH_PAIR(BM_Dice);

}  // namespace

BENCHMARK_MAIN();
