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

#include <cstdint>
#include <string>
#include <vector>

#include "fsv/data.hpp"

namespace fsv {

/// One object observation for the pixel-compression study.
struct CompressionSample {
  std::string object_id;
  std::string frame_id;
  std::string label;
  double distance = 0.0;       // 3D distance from the ego origin, meters
  double fisheye_area = 0.0;   // max projected bbox area over fisheye cameras, px^2
  double pinhole_area = 0.0;   // max projected bbox area over pinhole cameras, px^2
  double ratio = 0.0;          // fisheye_area / pinhole_area
};

struct CompressionOptions {
  int per_class_cap = 100;   // <= 0: keep everything
  std::uint64_t seed = 0;    // cap sampling seed
  int edge_samples = 1;      // box densification (see project_box)
  int threads = 1;           // frame-level workers; output independent of it
};

struct CompressionResult {
  std::vector<CompressionSample> samples;  // sorted by (label, distance)
  std::size_t skipped = 0;  // objects invisible to a lens type (or degenerate pinhole area)
};

/// Projects every annotation through every camera of each lens type and emits
/// the per-object max-area ratio. The rig must contain both lens types.
/// Invariant to camera enumeration order.
CompressionResult compression_samples(const DatasetManifest& manifest, const RigCalibration& rig,
                                      const CompressionOptions& options = {});

/// (fisheye_w * fisheye_h) / (pinhole_w * pinhole_h).
double area_ratio(double fisheye_w, double fisheye_h, double pinhole_w, double pinhole_h);

struct LowessFit {
  std::vector<double> x;  // sorted ascending
  std::vector<double> y;  // fitted values at x
};

/// Locally weighted linear regression (tricube kernel over the
/// fraction-nearest neighbors) with `iterations` bisquare robustness passes.
/// Needs at least 3 points and fraction in (0, 1]. Degenerate x columns fall
/// back to the robust weighted mean.
LowessFit lowess(std::vector<double> x, std::vector<double> y, double fraction = 0.5,
                 int iterations = 3);

struct CompressionCurves {
  std::vector<std::string> labels;  // per-class labels plus "all", sorted
  std::vector<LowessFit> fits;
};

/// LOWESS per class plus an overall curve (label "all"). Classes with fewer
/// than 3 samples are skipped.
CompressionCurves fit_compression_curves(const std::vector<CompressionSample>& samples,
                                         double fraction = 0.5, int iterations = 3);

void save_samples_csv(const std::vector<CompressionSample>& samples, const std::string& path);
void save_curves_csv(const CompressionCurves& curves, const std::string& path);

/// Deterministic scatter + fitted-curves SVG plot.
std::string compression_svg(const std::vector<CompressionSample>& samples,
                            const CompressionCurves& curves);
void save_compression_svg(const std::vector<CompressionSample>& samples,
                          const CompressionCurves& curves, const std::string& path);

}  // namespace fsv
