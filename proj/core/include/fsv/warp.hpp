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
#include <optional>
#include <string>
#include <vector>

#include "fsv/geometry.hpp"
#include "fsv/image.hpp"

namespace fsv {

enum class TargetKind { kEquirect, kCylindrical, kPerspective };
enum class SampleMode { kBilinear, kNearest };

/// Description of a rectification target view.
///
/// Equirectangular: azimuth linear in columns over [phi_min, phi_max], elevation
/// linear in rows over [theta_min, theta_max] (top row = theta_max).
/// Cylindrical: azimuth linear in columns; theta_min/theta_max hold the
/// dimensionless cylinder height range of direction_cylindrical (top = max).
/// Perspective: virtual pinhole of the given focal length, principal point at
/// the image center; the angular bounds are ignored.
struct GridSpec {
  TargetKind kind = TargetKind::kEquirect;
  int height = 0;
  int width = 0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  double focal = 0.0;  // pixels, perspective only

  static GridSpec equirect(int height, int width, double phi_min, double phi_max,
                           double theta_min, double theta_max);
  static GridSpec cylindrical(int height, int width, double phi_min, double phi_max,
                              double y_min, double y_max);
  static GridSpec perspective(int height, int width, double focal);

  /// Default equirect patch for a fisheye camera: phi, theta in [-fov/2, fov/2].
  static GridSpec equirect_for(const CameraModel& cam, int height, int width);

  void validate() const;

  /// Target direction for the cell (row, col), camera frame. nullopt for cells
  /// with no physical direction (equirect rows with |theta| > pi/2).
  std::optional<Vec3> direction(int row, int col) const;
};

/// Dense map from target pixels to normalized fisheye source coordinates in
/// [-1, 1]^2 with a per-cell validity flag. Invalid cells are never sampled.
struct SamplingGrid {
  int height = 0;
  int width = 0;
  std::vector<float> coords;        // 2 * height * width, (u_norm, v_norm) row-major
  std::vector<std::uint8_t> valid;  // height * width

  float u_norm(int row, int col) const { return coords[2 * (static_cast<std::size_t>(row) * width + col)]; }
  float v_norm(int row, int col) const { return coords[2 * (static_cast<std::size_t>(row) * width + col) + 1]; }
  bool is_valid(int row, int col) const { return valid[static_cast<std::size_t>(row) * width + col] != 0; }
};

/// Dense float feature map, row-major, interleaved channels.
struct FeatureMap {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;  // height * width * channels

  FeatureMap() = default;
  FeatureMap(int height_in, int width_in, int channels_in)
      : height(height_in),
        width(width_in),
        channels(channels_in),
        data(static_cast<std::size_t>(height_in) * width_in * channels_in, 0.0f) {}

  float& at(int row, int col, int ch) {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  float at(int row, int col, int ch) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
};

/// Normalizes a continuous pixel coordinate to [-1, 1]: 2*u/size - 1, which is
/// 2*(i + 0.5)/size - 1 at the center of pixel i.
double normalized_coord(double u, int size);
/// Inverse of normalized_coord.
double denormalized_coord(double u_norm, int size);

/// Builds the target-to-source sampling grid for one camera. Cells whose ray
/// leaves the camera FoV or lands outside [0, W) x [0, H) are marked invalid.
/// Deterministic: identical inputs produce bit-identical grids.
SamplingGrid build_grid(const GridSpec& spec, const CameraModel& cam);

/// Samples `src` through `grid`. Valid cells interpolate (out-of-image taps
/// contribute zero); invalid cells are zero in every channel.
FeatureMap apply_grid(const FeatureMap& src, const SamplingGrid& grid, SampleMode mode);

/// build_grid + apply_grid on an 8-bit image; float internally, rounded
/// half-to-even on output.
Image8 rectify_image(const Image8& image, const CameraModel& cam, const GridSpec& spec,
                     SampleMode mode);

Image8 feature_map_to_image(const FeatureMap& map);
FeatureMap image_to_feature_map(const Image8& image);

/// Little-endian binary grid dump (magic "FSVGRID1", u32 height, u32 width,
/// row-major float32 coordinate pairs, then a validity bitmap, LSB first).
void save_grid(const SamplingGrid& grid, const std::string& path);
SamplingGrid load_grid(const std::string& path);

/// Unit rays for every cell of an equirect/cylindrical/perspective spec.
/// Throws DataError if any cell has no physical direction.
std::vector<Vec3> grid_directions(const GridSpec& spec);

}  // namespace fsv
