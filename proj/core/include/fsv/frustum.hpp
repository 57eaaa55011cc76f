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

#pragma once

#include <string>
#include <vector>

#include "fsv/geometry.hpp"
#include "fsv/warp.hpp"

namespace fsv {

enum class DepthSpacing { kUniform, kQuadratic };

/// Radial depth discretization between r_min and r_max.
struct DepthBinning {
  double r_min = 1.0;
  double r_max = 68.0;
  int count = 67;
  DepthSpacing spacing = DepthSpacing::kUniform;

  void validate() const;
};

/// Shell radii, strictly increasing.
/// Uniform: r_d = r_min + d * (r_max - r_min)/D for d in [0, D-1].
/// Quadratic: r_d = r_min + (r_max - r_min)/(D(D+1)) * d(d+1) for d in [1, D],
/// so the last level reaches r_max exactly.
std::vector<double> depth_levels(const DepthBinning& binning);

/// D x H x W anchor points, reference frame.
struct FrustumShellSet {
  int depth_count = 0;
  int height = 0;
  int width = 0;
  std::string frame;      // coordinate frame tag
  std::string camera_id;  // source camera
  std::vector<Vec3> points;

  const Vec3& at(int d, int h, int w) const {
    return points[(static_cast<std::size_t>(d) * height + h) * width + w];
  }
};

/// Scales each unit ray by every shell radius and maps into the reference
/// frame: points[d,h,w] = M * (r_d * ray[h,w]).
FrustumShellSet build_frustum(const std::vector<Vec3>& rays, int height, int width,
                              const DepthBinning& binning, const Extrinsics& extrinsics,
                              const std::string& camera_id = {});

/// Per-pixel features distributed over depth shells by a softmax distribution.
struct LiftedVolume {
  int depth_count = 0;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> features;  // D * H * W * C
  std::vector<float> alpha;     // D * H * W, each (h, w) column sums to 1

  float feature(int d, int h, int w, int c) const {
    return features[((static_cast<std::size_t>(d) * height + h) * width + w) * channels + c];
  }
  float alpha_at(int d, int h, int w) const {
    return alpha[(static_cast<std::size_t>(d) * height + h) * width + w];
  }
};

/// alpha = softmax over the D depth logits at each pixel;
/// output[d,h,w,:] = alpha[d,h,w] * features[h,w,:].
LiftedVolume lift(const FeatureMap& features, const FeatureMap& depth_logits);

/// Bird's-eye-view grid over the reference x/y plane. The extents must divide
/// into whole cells.
struct BevGridSpec {
  double x_min = -48.0;
  double x_max = 48.0;
  double y_min = -48.0;
  double y_max = 48.0;
  double cell = 0.75;  // meters
  double z_min = -5.0;
  double z_max = 5.0;

  void validate() const;
  int nx() const;
  int ny() const;
};

struct BevGrid {
  BevGridSpec spec;
  int channels = 0;
  std::vector<float> data;  // ny * nx * C, row-major over (iy, ix)

  float at(int iy, int ix, int c) const {
    return data[(static_cast<std::size_t>(iy) * spec.nx() + ix) * channels + c];
  }
};

/// Sum-pools every lifted feature into the BEV cell containing its anchor
/// point. Points outside the x/y extent or the z range are dropped.
/// Accumulation runs in a fixed order with double-precision cell sums, so the
/// result is independent of how callers parallelize the surrounding work.
BevGrid splat(const LiftedVolume& volume, const FrustumShellSet& frustum, const BevGridSpec& spec);

/// Adds `volume` into an existing grid (multi-camera accumulation).
void splat_into(BevGrid& bev, const LiftedVolume& volume, const FrustumShellSet& frustum);

/// CSV rows "row,col,channel,value" for every nonzero cell, row-major.
void save_bev_csv(const BevGrid& bev, const std::string& path);
/// Grayscale heatmap of the channel sum, normalized by the grid maximum.
void save_bev_heatmap(const BevGrid& bev, const std::string& path);

/// Total feature mass of the cells (double accumulation).
double bev_total(const BevGrid& bev);

}  // namespace fsv
