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

#include "fsv/warp.hpp"

namespace {

fsv::CameraModel bench_camera() {
  return fsv::CameraModel("bench",
                          fsv::FisheyeIntrinsics({209.0, -0.45, 0.002, 0.0, 0.0}, 400.0, 400.0,
                                                 fsv::deg2rad(220.0)),
                          fsv::Extrinsics(), 800, 800);
}

void BM_BuildGrid(benchmark::State& state) {
  const fsv::CameraModel cam = bench_camera();
  const auto spec = fsv::GridSpec::equirect_for(cam, static_cast<int>(state.range(0)),
                                                static_cast<int>(state.range(0)) * 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::build_grid(spec, cam));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0) * 2);
}
BENCHMARK(BM_BuildGrid)->Arg(64)->Arg(256);

void BM_ApplyGridBilinear(benchmark::State& state) {
  const fsv::CameraModel cam = bench_camera();
  const int rows = static_cast<int>(state.range(0));
  const auto grid = fsv::build_grid(fsv::GridSpec::equirect_for(cam, rows, rows * 2), cam);
  fsv::FeatureMap src(cam.height, cam.width, 3);
  for (std::size_t i = 0; i < src.data.size(); ++i) {
    src.data[i] = static_cast<float>(i % 251);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::apply_grid(src, grid, fsv::SampleMode::kBilinear));
  }
  state.SetItemsProcessed(state.iterations() * rows * rows * 2);
}
BENCHMARK(BM_ApplyGridBilinear)->Arg(64)->Arg(256);

}  // namespace
