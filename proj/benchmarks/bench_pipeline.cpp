#include <benchmark/benchmark.h>

#include <random>

#include "biokey/fingerprint.hpp"
#include "biokey/fusion.hpp"
#include "biokey/iris.hpp"
#include "biokey/keygen.hpp"
#include "biokey/pipeline.hpp"
#include "biokey/thinning.hpp"
#include "synthetic.hpp"

using namespace biokey;

namespace {

const GrayImage& fingerprint_sample() {
  static const GrayImage img = synth::sample_fingerprint();
  return img;
}

const GrayImage& eye_sample() {
  static const GrayImage img = synth::sample_eye();
  return img;
}

void BM_Thin(benchmark::State& state) {
  const auto stages = pipeline::run_fingerprint(fingerprint_sample(), {});
  const auto binary = fingerprint::binarize(stages.enhanced, stages.mask);
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint::thin(binary));
}
BENCHMARK(BM_Thin)->Unit(benchmark::kMillisecond);

void BM_GaborEnhance(benchmark::State& state) {
  const auto stages = pipeline::run_fingerprint(fingerprint_sample(), {});
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint::gabor_enhance(stages.smoothed, stages.orientation, {}));
}
BENCHMARK(BM_GaborEnhance)->Unit(benchmark::kMillisecond);

void BM_CircularHough(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto edges = synth::raster_circle(2 * r + 40, 2 * r + 40, r + 20, r + 20, r);
  for (auto _ : state) benchmark::DoNotOptimize(iris::circular_hough(edges, r / 2, r + r / 2));
}
BENCHMARK(BM_CircularHough)->Arg(20)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_LocateBoundaries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(iris::locate_boundaries(eye_sample()));
}
BENCHMARK(BM_LocateBoundaries)->Unit(benchmark::kMillisecond);

void BM_LogGaborFeatures(benchmark::State& state) {
  const auto stages = pipeline::run_iris(eye_sample(), {});
  for (auto _ : state) benchmark::DoNotOptimize(iris::log_gabor_features(stages.normalized, 1.0 / 18.0, 0.5));
}
BENCHMARK(BM_LogGaborFeatures)->Unit(benchmark::kMicrosecond);

void BM_FuseAndKey(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  auto seq = [&](std::size_t len) {
    fusion::Sequence v(len);
    for (auto& x : v) x = static_cast<fusion::Component>(rng());
    return v;
  };
  const fusion::FeatureVectors f(seq(n / 100 + 1), seq(n / 100 + 1), seq(n), seq(n));
  for (auto _ : state) benchmark::DoNotOptimize(keygen::generate_key(fusion::fuse(f, fusion::ShuffleSeed{7})));
}
BENCHMARK(BM_FuseAndKey)->Arg(1000)->Arg(4800)->Arg(20000)->Unit(benchmark::kMicrosecond);

void BM_FullPipeline(benchmark::State& state) {
  for (auto _ : state) {
    const auto fp = pipeline::run_fingerprint(fingerprint_sample(), {});
    const auto ir = pipeline::run_iris(eye_sample(), {});
    const auto bt = fusion::fuse(pipeline::assemble_features(fp.minutiae, ir.features), fusion::ShuffleSeed{1});
    benchmark::DoNotOptimize(keygen::generate_key(bt));
  }
}
BENCHMARK(BM_FullPipeline)->Unit(benchmark::kMillisecond);

}  // namespace
