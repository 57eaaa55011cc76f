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
#include <variant>

#include "fsv/errors.hpp"
#include "fsv/math.hpp"

namespace fsv {

// Frame conventions (normative reference: docs/conventions.md):
//   camera frame:    x forward (optical axis), y up, z right
//   reference frame: x forward, y left, z up (ego/rig frame)
// Pixel coordinates are continuous with pixel (i, j) sampled at (i + 0.5, j + 0.5);
// u grows rightward (columns), v grows downward (rows).

/// Viewing direction given by azimuth and elevation, radians.
struct SphericalDirection {
  double phi = 0.0;    ///< azimuth in [-pi, pi]
  double theta = 0.0;  ///< elevation in [-pi/2, pi/2]

  SphericalDirection() = default;
  SphericalDirection(double phi_in, double theta_in);
};

/// Unit direction for azimuth/elevation: [cos(theta)cos(phi), sin(theta), cos(theta)sin(phi)].
Vec3 direction_from_angles(double phi, double theta);

/// Cylindrical direction [sin(phi), y, cos(phi)]; not unit length unless y = 0.
Vec3 direction_cylindrical(double phi, double y);

/// Radial polynomial lens model: r(theta) = k0*t + k1*t^3 + k2*t^5 + k3*t^7 + k4*t^9,
/// with r in pixels and theta the incident angle from the optical axis.
struct FisheyeIntrinsics {
  std::array<double, 5> k{};  ///< k0 carries the pixels/radian scale
  double cx = 0.0;            ///< principal point, pixels
  double cy = 0.0;
  double fov = 0.0;           ///< full field of view, radians

  FisheyeIntrinsics() = default;

  /// Validates k0 > 0, fov in (0, 2pi), and that r(theta) is strictly
  /// increasing on [0, fov/2] (derivative sampled on a dense grid).
  FisheyeIntrinsics(const std::array<double, 5>& k_in, double cx_in, double cy_in, double fov_in);

  double max_theta() const { return fov / 2.0; }
  /// Image-circle radius, r(fov/2).
  double max_radius() const;
};

struct PinholeIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  PinholeIntrinsics() = default;
  PinholeIntrinsics(double fx_in, double fy_in, double cx_in, double cy_in);
};

/// Rigid camera-to-reference transform. The rotation block must be orthonormal
/// with determinant +1 (tolerance 1e-9); translation is in meters.
struct Extrinsics {
  Mat4 cam_to_ref = Mat4::identity();

  Extrinsics() = default;
  explicit Extrinsics(const Mat4& cam_to_ref_in);

  Mat4 ref_to_cam() const { return cam_to_ref.inverse_rigid(); }
};

/// Extrinsics for a camera at `position` (reference frame) whose optical axis
/// points at reference yaw/pitch (radians, yaw about +z, pitch above horizon).
Extrinsics look_extrinsics(const Vec3& position, double yaw, double pitch = 0.0);

enum class LensType { kPinhole, kFisheye };

struct CameraModel {
  std::string id;
  LensType lens = LensType::kPinhole;
  std::variant<PinholeIntrinsics, FisheyeIntrinsics> intrinsics;
  Extrinsics extrinsics;
  int width = 0;   ///< pixels
  int height = 0;  ///< pixels

  CameraModel() = default;
  CameraModel(std::string id_in, PinholeIntrinsics pin, Extrinsics ext, int width_in, int height_in);
  CameraModel(std::string id_in, FisheyeIntrinsics fish, Extrinsics ext, int width_in, int height_in);

  const PinholeIntrinsics& pinhole() const;
  const FisheyeIntrinsics& fisheye() const;
};

/// r(theta). Throws OutOfFieldOfView for theta outside [0, fov/2].
double fisheye_radius(double theta, const FisheyeIntrinsics& k);

/// Inverse of fisheye_radius: damped Newton from theta0 = r/k0 with a
/// guaranteed bisection fallback on [0, fov/2]. |r(theta) - radius| converges
/// below 1e-9 * max(1, radius). Throws OutOfFieldOfView for radius beyond the
/// image circle.
double fisheye_theta(double radius, const FisheyeIntrinsics& k);

Vec2 project_fisheye(const Vec3& p_cam, const CameraModel& cam);
Vec3 unproject_fisheye(const Vec2& pixel, const CameraModel& cam);

Vec2 project_pinhole(const Vec3& p_cam, const CameraModel& cam);
Vec3 unproject_pinhole(const Vec2& pixel, const CameraModel& cam);

/// Lens-dispatching projection of a camera-frame point to continuous pixels.
Vec2 project(const Vec3& p_cam, const CameraModel& cam);
/// Non-throwing variant; nullopt for out-of-FoV / behind-camera rays.
std::optional<Vec2> try_project(const Vec3& p_cam, const CameraModel& cam);
/// Lens-dispatching unprojection of a continuous pixel to a unit camera-frame ray.
Vec3 unproject(const Vec2& pixel, const CameraModel& cam);

/// Homogeneous multiply by the camera-to-reference transform, truncated to 3D.
Vec3 transform_point(const Vec3& p, const Extrinsics& m);

/// M2 applied after M1.
Extrinsics compose(const Extrinsics& m2, const Extrinsics& m1);

}  // namespace fsv
