#include <benchmark/benchmark.h>

#include "fluxriver/aggregate.hpp"
#include "fluxriver/layout.hpp"
#include "fluxriver/pixelmap.hpp"
#include "fluxriver/render.hpp"
#include "fluxriver/synth.hpp"

using namespace fluxriver;

namespace {

const Bundle& fixture() {
  static const Bundle bundle = generate(appassionata_like_spec());
  return bundle;
}

void BM_AggregateUnweighted(benchmark::State& state) {
  const auto& b = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_votes(b.predictions, b.meta, WeightingScheme::unweighted()));
}
BENCHMARK(BM_AggregateUnweighted);

void BM_AggregateClassAccuracy(benchmark::State& state) {
  const auto& b = fixture();
  const auto scheme = WeightingScheme::class_accuracy(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_votes(b.predictions, b.meta, scheme));
}
BENCHMARK(BM_AggregateClassAccuracy)->DenseRange(1, 3);

void BM_LayoutDualflux(benchmark::State& state) {
  const auto& b = fixture();
  const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::class_accuracy(2));
  const auto smoothing = state.range(0) == 0 ? Smoothing::Blocky : Smoothing::Smooth;
  for (auto _ : state) benchmark::DoNotOptimize(layout_dualflux(vs, smoothing));
}
BENCHMARK(BM_LayoutDualflux)->Arg(0)->Arg(1);

void BM_RenderRiver(benchmark::State& state) {
  const auto& b = fixture();
  const auto vs = aggregate_votes(b.predictions, b.meta, WeightingScheme::class_accuracy(2));
  const auto g = layout_dualflux(vs, Smoothing::Smooth);
  const auto canvas = Canvas::for_river(g, 800, 240);
  for (auto _ : state) benchmark::DoNotOptimize(render_river(g, canvas, b.moods).to_string());
}
BENCHMARK(BM_RenderRiver);

void BM_RenderPixels(benchmark::State& state) {
  const auto& b = fixture();
  const auto panel = build_panel(b.predictions, b.meta, {});
  const auto canvas = Canvas::fit(800, 440, {}, 0.5, 30.5, 0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(render_pixels(panel, canvas, b.moods).to_string());
}
BENCHMARK(BM_RenderPixels);

}  // namespace

BENCHMARK_MAIN();
