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

#include "fsv/evaluation.hpp"

namespace {

std::vector<fsv::Box3D> grid_boxes(int n, bool scored, double jitter) {
  std::vector<fsv::Box3D> boxes;
  for (int i = 0; i < n; ++i) {
    fsv::Box3D b;
    b.center = {5.0 * (i % 10) - 22.5 + jitter, 5.0 * (i / 10) - 22.5 - jitter, 0.8};
    b.size = {4.5, 1.9, 1.55};
    b.yaw = 0.1 * i;
    b.label = "car";
    if (scored) {
      b.score = 1.0 - 0.007 * i;
    }
    b.validate_and_wrap();
    boxes.push_back(std::move(b));
  }
  return boxes;
}

void BM_MatchGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto gts = grid_boxes(n, false, 0.0);
  const auto preds = grid_boxes(n, true, 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::match_greedy(gts, preds, "car", 2.0));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_MatchGreedy)->Arg(20)->Arg(100);

void BM_Evaluate(benchmark::State& state) {
  fsv::FrameBoxes gts, preds;
  for (int f = 0; f < 40; ++f) {
    const std::string id = "frame_" + std::to_string(f);
    gts[id] = grid_boxes(30, false, 0.0);
    preds[id] = grid_boxes(30, true, 0.3 + 0.01 * f);
  }
  fsv::EvalConfig config;
  config.classes = {"car"};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::evaluate(gts, preds, config));
  }
}
BENCHMARK(BM_Evaluate);

}  // namespace
