/*
 * Copyright 2026 The fsv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cmath>

#include "fsv/frustum.hpp"
#include "fsv/warp.hpp"

namespace {

constexpr int kDepth = 67;
constexpr int kRows = 32;
constexpr int kCols = 64;

fsv::LiftedVolume bench_volume() {
  fsv::FeatureMap features(kRows, kCols, 8);
  fsv::FeatureMap logits(kRows, kCols, kDepth);
  for (std::size_t i = 0; i < features.data.size(); ++i) {
    features.data[i] = static_cast<float>((i * 37) % 97) / 97.0f;
  }
  for (std::size_t i = 0; i < logits.data.size(); ++i) {
    logits.data[i] = static_cast<float>((i * 13) % 89) / 29.0f - 1.5f;
  }
  return fsv::lift(features, logits);
}

fsv::FrustumShellSet bench_frustum() {
  const auto spec = fsv::GridSpec::equirect(kRows, kCols, -1.9, 1.9, -1.4, 1.4);
  return fsv::build_frustum(fsv::grid_directions(spec), kRows, kCols,
                            {1.0, 68.0, kDepth, fsv::DepthSpacing::kUniform}, fsv::Extrinsics());
}

void BM_Lift(benchmark::State& state) {
  fsv::FeatureMap features(kRows, kCols, 8);
  fsv::FeatureMap logits(kRows, kCols, kDepth);
  for (std::size_t i = 0; i < logits.data.size(); ++i) {
    logits.data[i] = static_cast<float>(std::sin(0.37 * static_cast<double>(i)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::lift(features, logits));
  }
  state.SetItemsProcessed(state.iterations() * kDepth * kRows * kCols);
}
BENCHMARK(BM_Lift);

void BM_Splat(benchmark::State& state) {
  const fsv::LiftedVolume volume = bench_volume();
  const fsv::FrustumShellSet frustum = bench_frustum();
  fsv::BevGridSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::splat(volume, frustum, spec));
  }
  state.SetItemsProcessed(state.iterations() * kDepth * kRows * kCols);
}
BENCHMARK(BM_Splat);

}  // namespace
