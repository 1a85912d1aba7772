// Copyright 2026 The Sketchforge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "sketchforge/detection_metrics.h"
#include "sketchforge/morphology.h"
#include "sketchforge/sketch_pipeline.h"
#include "sketchforge/xdog.h"

namespace sketchforge {
namespace {

Image NoiseGray(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Image img(size, size, 1);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng());
  return img;
}

void BM_MorphGradient(benchmark::State& state) {
  const Image img = NoiseGray(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(MorphGradient(img, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MorphGradient)->Arg(128)->Arg(512);

void BM_XDoG(benchmark::State& state) {
  const Image img = NoiseGray(static_cast<int>(state.range(0)), 2);
  const StylizerSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(XDoGStylize(img, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_XDoG)->Arg(128)->Arg(512);

void BM_InstanceSketch(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  Image photo(size, size, 3);
  for (auto& p : photo.pixels()) p = static_cast<std::uint8_t>(rng());
  std::vector<std::uint8_t> flags(static_cast<std::size_t>(size) * size, 0);
  const int lo = size / 4, hi = 3 * size / 4;
  for (int y = lo; y < hi; ++y) {
    for (int x = lo; x < hi; ++x) flags[static_cast<std::size_t>(y) * size + x] = 1;
  }
  const MaskRaster mask(size, size, flags);
  ImageRecord rec;
  rec.id = "bench";
  rec.width = rec.height = size;
  rec.annotations.push_back(
      {0, {0.25, 0.25, 0.75, 0.75}, static_cast<double>((hi - lo) * (hi - lo))});
  const SketchOptions opts;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateInstanceSketch(photo, rec, 0, mask, opts));
  }
}
BENCHMARK(BM_InstanceSketch)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MeanAveragePrecision(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::vector<DetectionSample> split(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < split.size(); ++i) {
    DetectionSample& s = split[i];
    s.class_id = static_cast<int>(i % 20);
    s.size = ImageSize{640, 480};
    for (int k = 0; k < 4; ++k) {
      const double x = u(rng), y = u(rng);
      s.gts.push_back({x, y, x + 0.3, y + 0.3});
      s.preds.push_back({x + 0.02, y, x + 0.31, y + 0.29});
    }
  }
  const auto ts = DefaultIouThresholds();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeMeanAveragePrecision(split, ts));
  }
}
BENCHMARK(BM_MeanAveragePrecision)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sketchforge

BENCHMARK_MAIN();
