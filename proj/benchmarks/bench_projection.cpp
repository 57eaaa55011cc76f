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
#include <vector>

#include "fsv/geometry.hpp"

namespace {

fsv::CameraModel bench_camera() {
  return fsv::CameraModel("bench",
                          fsv::FisheyeIntrinsics({209.0, -0.45, 0.002, 0.0, 0.0}, 400.0, 400.0,
                                                 fsv::deg2rad(220.0)),
                          fsv::Extrinsics(), 800, 800);
}

std::vector<fsv::Vec3> in_fov_points(std::size_t n) {
  std::vector<fsv::Vec3> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = 1.9 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double psi = 2.39996 * static_cast<double>(i);  // golden-angle spread
    points.push_back({std::cos(theta), std::sin(theta) * std::sin(psi),
                      std::sin(theta) * std::cos(psi)});
  }
  return points;
}

void BM_ProjectFisheye(benchmark::State& state) {
  const fsv::CameraModel cam = bench_camera();
  const auto points = in_fov_points(4096);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::project_fisheye(points[i++ & 4095], cam));
  }
}
BENCHMARK(BM_ProjectFisheye);

void BM_UnprojectFisheye(benchmark::State& state) {
  const fsv::CameraModel cam = bench_camera();
  const auto points = in_fov_points(4096);
  std::vector<fsv::Vec2> pixels;
  pixels.reserve(points.size());
  for (const auto& p : points) {
    pixels.push_back(fsv::project_fisheye(p, cam));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fsv::unproject_fisheye(pixels[i++ & 4095], cam));
  }
}
BENCHMARK(BM_UnprojectFisheye);

void BM_FisheyeThetaInverse(benchmark::State& state) {
  const fsv::FisheyeIntrinsics intr({209.0, -0.45, 0.002, 0.0, 0.0}, 400.0, 400.0,
                                    fsv::deg2rad(220.0));
  const double r_max = intr.max_radius();
  double r = 0.0;
  for (auto _ : state) {
    r += 17.0;
    if (r >= r_max) {
      r -= r_max;
    }
    benchmark::DoNotOptimize(fsv::fisheye_theta(r, intr));
  }
}
BENCHMARK(BM_FisheyeThetaInverse);

}  // namespace
