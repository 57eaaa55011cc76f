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

#include "fsv/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fsv {

void Box3D::validate_and_wrap() {
  if (!(size.x > 0.0 && size.y > 0.0 && size.z > 0.0)) {
    throw DataError("Box3D: sizes must be positive");
  }
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(center.z) ||
      !std::isfinite(yaw)) {
    throw DataError("Box3D: non-finite center or yaw");
  }
  if (score && !(*score >= 0.0 && *score <= 1.0)) {
    throw DataError("Box3D: score outside [0, 1]");
  }
  yaw = wrap_angle(yaw);
}

std::array<Vec3, 8> box_corners(const Box3D& box) {
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = box.size.x / 2.0;
  const double hw = box.size.y / 2.0;
  const double hh = box.size.z / 2.0;
  std::array<Vec3, 8> corners;
  int idx = 0;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) {
        const double x = sx * hl;
        const double y = sy * hw;
        corners[static_cast<std::size_t>(idx++)] = {box.center.x + c * x - s * y,
                                                    box.center.y + s * x + c * y,
                                                    box.center.z + sz * hh};
      }
    }
  }
  return corners;
}

std::optional<Aabb2> project_box(const Box3D& box, const CameraModel& cam, int edge_samples) {
  const auto corners = box_corners(box);
  std::vector<Vec3> samples(corners.begin(), corners.end());

  // Horizontal (top and bottom face) edges; corner indexing is
  // (sx, sy, sz) lexicographic, so sz toggles with bit 0.
  static constexpr int kHorizontalEdges[8][2] = {
      {0, 2}, {2, 6}, {6, 4}, {4, 0},  // bottom ring (sz = -1)
      {1, 3}, {3, 7}, {7, 5}, {5, 1},  // top ring (sz = +1)
  };
  for (const auto& edge : kHorizontalEdges) {
    const Vec3& a = corners[static_cast<std::size_t>(edge[0])];
    const Vec3& b = corners[static_cast<std::size_t>(edge[1])];
    for (int k = 1; k <= edge_samples; ++k) {
      const double t = static_cast<double>(k) / (edge_samples + 1);
      samples.push_back(a + t * (b - a));
    }
  }

  const Mat4 ref_to_cam = cam.extrinsics.ref_to_cam();
  bool any = false;
  Aabb2 bbox{1e300, 1e300, -1e300, -1e300};
  for (const Vec3& p_ref : samples) {
    const Vec3 p_cam = ref_to_cam.transform_point(p_ref);
    const auto px = try_project(p_cam, cam);
    if (!px) {
      continue;
    }
    if (!(px->x >= 0.0 && px->x < cam.width && px->y >= 0.0 && px->y < cam.height)) {
      continue;
    }
    any = true;
    bbox.u_min = std::min(bbox.u_min, px->x);
    bbox.v_min = std::min(bbox.v_min, px->y);
    bbox.u_max = std::max(bbox.u_max, px->x);
    bbox.v_max = std::max(bbox.v_max, px->y);
  }
  if (!any) {
    return std::nullopt;
  }
  return bbox;
}

double aligned_iou(const Box3D& a, const Box3D& b) {
  const double inter = std::min(a.size.x, b.size.x) * std::min(a.size.y, b.size.y) *
                       std::min(a.size.z, b.size.z);
  const double uni = a.volume() + b.volume() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double center_distance_2d(const Box3D& a, const Box3D& b) {
  return std::hypot(a.center.x - b.center.x, a.center.y - b.center.y);
}

double yaw_error(const Box3D& a, const Box3D& b) {
  return std::abs(wrap_angle(a.yaw - b.yaw));
}

}  // namespace fsv
