#include "topotess/alpha_complex.hpp"
#include "topotess/cvt.hpp"
#include "topotess/geometry.hpp"
#include "topotess/imagepipe.hpp"
#include "topotess/persistence.hpp"
#include "topotess/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace topotess;

namespace {

std::vector<Point2> points(std::size_t n) {
  CvtConfig cfg;
  cfg.fixed_count = true;
  cfg.expected_points = static_cast<double>(n);
  return poisson_points(cfg);
}

void BM_delaunay(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delaunay(pts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_delaunay)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_alpha_persistence(benchmark::State& state) {
  const auto pts = points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_persistence(alpha_complex(pts)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_alpha_persistence)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_summarize_245(benchmark::State& state) {
  const auto pts = points(245);
  const RunConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(summarize_points(pts, cfg));
}
BENCHMARK(BM_summarize_245);

void BM_lloyd_step(benchmark::State& state) {
  const auto pts = points(600);
  const Box box{0, 0, 1024, 1024};
  for (auto _ : state) benchmark::DoNotOptimize(lloyd_step(pts, box));
}
BENCHMARK(BM_lloyd_step);

void BM_rasterize(benchmark::State& state) {
  const auto pts = points(600);
  const auto side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(pts, Box{0, 0, 1024, 1024}, side, side));
}
BENCHMARK(BM_rasterize)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_spiral_select(benchmark::State& state) {
  const auto img = rasterize(points(600), Box{0, 0, 1024, 1024}, 1024, 1024);
  for (auto _ : state) benchmark::DoNotOptimize(spiral_select(img, 245));
}
BENCHMARK(BM_spiral_select)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
