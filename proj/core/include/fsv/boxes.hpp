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

#include <array>
#include <optional>
#include <string>

#include "fsv/geometry.hpp"

namespace fsv {

/// Oriented 3D bounding box in the reference frame. Yaw rotates about +z
/// (up); at yaw 0 the length runs along +x, the width along +y.
struct Box3D {
  Vec3 center;                  // meters
  Vec3 size;                    // length, width, height (x, y, z before yaw)
  double yaw = 0.0;             // radians, wrapped to (-pi, pi]
  std::string label;
  std::optional<double> score;  // present iff this is a prediction
  std::string track_id;
  std::string frame_id;

  /// Throws on non-positive sizes; wraps yaw into (-pi, pi].
  void validate_and_wrap();
  double volume() const { return size.x * size.y * size.z; }
};

/// The eight corners, (sx, sy, sz) in {-1, +1}^3 lexicographic order. The
/// corner centroid equals the box center.
std::array<Vec3, 8> box_corners(const Box3D& box);

/// Axis-aligned pixel rectangle.
struct Aabb2 {
  double u_min = 0.0;
  double v_min = 0.0;
  double u_max = 0.0;
  double v_max = 0.0;

  double width() const { return u_max - u_min; }
  double height() const { return v_max - v_min; }
  double area() const { return width() * height(); }
};

/// Tight pixel bbox of the box's sample points (8 corners plus `edge_samples`
/// interior points on each horizontal edge; the default adds the midpoints,
/// 16 points total). Sample points outside the FoV or the image are dropped;
/// nullopt when nothing projects.
std::optional<Aabb2> project_box(const Box3D& box, const CameraModel& cam, int edge_samples = 1);

/// Size-only 3D IoU of two boxes aligned at a common center and yaw:
/// intersection = prod(min(size components)).
double aligned_iou(const Box3D& a, const Box3D& b);

/// Euclidean distance over reference (x, y) only.
double center_distance_2d(const Box3D& a, const Box3D& b);

/// Smallest absolute yaw difference over the full period, in [0, pi].
double yaw_error(const Box3D& a, const Box3D& b);

}  // namespace fsv
