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

#include "fsv/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fsv {

namespace {

constexpr int kMonotonicitySamples = 2048;
constexpr int kNewtonMaxIterations = 50;
constexpr double kNewtonTolerance = 1e-12;

bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// r(theta) without the FoV check.
double radial_poly(double t, const std::array<double, 5>& k) {
  const double t2 = t * t;
  // Horner in theta^2, one final multiply by theta.
  return t * (k[0] + t2 * (k[1] + t2 * (k[2] + t2 * (k[3] + t2 * k[4]))));
}

double radial_poly_derivative(double t, const std::array<double, 5>& k) {
  const double t2 = t * t;
  return k[0] + t2 * (3.0 * k[1] + t2 * (5.0 * k[2] + t2 * (7.0 * k[3] + t2 * 9.0 * k[4])));
}

}  // namespace

SphericalDirection::SphericalDirection(double phi_in, double theta_in) : phi(phi_in), theta(theta_in) {
  if (!(phi >= -kPi && phi <= kPi)) {
    throw std::invalid_argument("SphericalDirection: phi outside [-pi, pi]");
  }
  if (!(theta >= -kPi / 2.0 && theta <= kPi / 2.0)) {
    throw std::invalid_argument("SphericalDirection: theta outside [-pi/2, pi/2]");
  }
}

Vec3 direction_from_angles(double phi, double theta) {
  SphericalDirection checked(phi, theta);
  const double ct = std::cos(checked.theta);
  return {ct * std::cos(checked.phi), std::sin(checked.theta), ct * std::sin(checked.phi)};
}

Vec3 direction_cylindrical(double phi, double y) {
  if (!std::isfinite(phi) || !std::isfinite(y)) {
    throw std::invalid_argument("direction_cylindrical: non-finite input");
  }
  return {std::sin(phi), y, std::cos(phi)};
}

FisheyeIntrinsics::FisheyeIntrinsics(const std::array<double, 5>& k_in, double cx_in, double cy_in,
                                     double fov_in)
    : k(k_in), cx(cx_in), cy(cy_in), fov(fov_in) {
  if (!(k[0] > 0.0)) {
    throw std::invalid_argument("FisheyeIntrinsics: k0 must be positive");
  }
  if (!(fov > 0.0 && fov < 2.0 * kPi)) {
    throw std::invalid_argument("FisheyeIntrinsics: fov outside (0, 2*pi)");
  }
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw std::invalid_argument("FisheyeIntrinsics: non-finite principal point");
  }
  // Strict monotonicity of r on [0, fov/2], sampled on the derivative.
  const double half = fov / 2.0;
  for (int i = 0; i <= kMonotonicitySamples; ++i) {
    const double t = half * static_cast<double>(i) / kMonotonicitySamples;
    if (!(radial_poly_derivative(t, k) > 0.0)) {
      std::ostringstream os;
      os << "FisheyeIntrinsics: r(theta) not strictly increasing at theta=" << t;
      throw std::invalid_argument(os.str());
    }
  }
}

double FisheyeIntrinsics::max_radius() const { return radial_poly(max_theta(), k); }

PinholeIntrinsics::PinholeIntrinsics(double fx_in, double fy_in, double cx_in, double cy_in)
    : fx(fx_in), fy(fy_in), cx(cx_in), cy(cy_in) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("PinholeIntrinsics: focal lengths must be positive");
  }
}

Extrinsics::Extrinsics(const Mat4& cam_to_ref_in) : cam_to_ref(cam_to_ref_in) {
  constexpr double kTol = 1e-9;
  // Rotation block orthonormal with determinant +1; bottom row (0,0,0,1).
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int r = 0; r < 3; ++r) {
        s += cam_to_ref.at(r, i) * cam_to_ref.at(r, j);
      }
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(s - expected) > kTol) {
        throw std::invalid_argument("Extrinsics: rotation block not orthonormal");
      }
    }
  }
  const Vec3 c0{cam_to_ref.at(0, 0), cam_to_ref.at(1, 0), cam_to_ref.at(2, 0)};
  const Vec3 c1{cam_to_ref.at(0, 1), cam_to_ref.at(1, 1), cam_to_ref.at(2, 1)};
  const Vec3 c2{cam_to_ref.at(0, 2), cam_to_ref.at(1, 2), cam_to_ref.at(2, 2)};
  if (std::abs(dot(cross(c0, c1), c2) - 1.0) > 1e-9) {
    throw std::invalid_argument("Extrinsics: rotation determinant is not +1");
  }
  if (cam_to_ref.at(3, 0) != 0.0 || cam_to_ref.at(3, 1) != 0.0 || cam_to_ref.at(3, 2) != 0.0 ||
      cam_to_ref.at(3, 3) != 1.0) {
    throw std::invalid_argument("Extrinsics: bottom row must be (0, 0, 0, 1)");
  }
  if (!finite(cam_to_ref.translation())) {
    throw std::invalid_argument("Extrinsics: non-finite translation");
  }
}

Extrinsics look_extrinsics(const Vec3& position, double yaw, double pitch) {
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  // Camera basis expressed in the reference frame.
  const Vec3 forward{cy * cp, sy * cp, sp};
  const Vec3 up{-cy * sp, -sy * sp, cp};
  const Vec3 right = cross(forward, up);
  Mat4 m = Mat4::identity();
  m.at(0, 0) = forward.x;
  m.at(1, 0) = forward.y;
  m.at(2, 0) = forward.z;
  m.at(0, 1) = up.x;
  m.at(1, 1) = up.y;
  m.at(2, 1) = up.z;
  m.at(0, 2) = right.x;
  m.at(1, 2) = right.y;
  m.at(2, 2) = right.z;
  m.at(0, 3) = position.x;
  m.at(1, 3) = position.y;
  m.at(2, 3) = position.z;
  return Extrinsics(m);
}

namespace {

void validate_camera(const CameraModel& cam, double cx, double cy) {
  if (cam.width <= 0 || cam.height <= 0) {
    throw std::invalid_argument("CameraModel: image size must be positive");
  }
  if (!(cx >= 0.0 && cx <= cam.width && cy >= 0.0 && cy <= cam.height)) {
    throw std::invalid_argument("CameraModel: principal point outside image bounds");
  }
}

}  // namespace

CameraModel::CameraModel(std::string id_in, PinholeIntrinsics pin, Extrinsics ext, int width_in,
                         int height_in)
    : id(std::move(id_in)),
      lens(LensType::kPinhole),
      intrinsics(pin),
      extrinsics(ext),
      width(width_in),
      height(height_in) {
  validate_camera(*this, pin.cx, pin.cy);
}

CameraModel::CameraModel(std::string id_in, FisheyeIntrinsics fish, Extrinsics ext, int width_in,
                         int height_in)
    : id(std::move(id_in)),
      lens(LensType::kFisheye),
      intrinsics(fish),
      extrinsics(ext),
      width(width_in),
      height(height_in) {
  validate_camera(*this, fish.cx, fish.cy);
}

const PinholeIntrinsics& CameraModel::pinhole() const {
  if (lens != LensType::kPinhole) {
    throw std::logic_error("CameraModel: not a pinhole camera");
  }
  return std::get<PinholeIntrinsics>(intrinsics);
}

const FisheyeIntrinsics& CameraModel::fisheye() const {
  if (lens != LensType::kFisheye) {
    throw std::logic_error("CameraModel: not a fisheye camera");
  }
  return std::get<FisheyeIntrinsics>(intrinsics);
}

double fisheye_radius(double theta, const FisheyeIntrinsics& k) {
  const double half = k.max_theta();
  if (!(theta >= 0.0 && theta <= half)) {
    throw OutOfFieldOfView("fisheye_radius: theta outside [0, fov/2]");
  }
  return radial_poly(theta, k.k);
}

double fisheye_theta(double radius, const FisheyeIntrinsics& k) {
  const double half = k.max_theta();
  const double r_max = radial_poly(half, k.k);
  if (!(radius >= 0.0)) {
    throw OutOfFieldOfView("fisheye_theta: negative radius");
  }
  if (radius > r_max * (1.0 + 1e-9) + 1e-12) {
    throw OutOfFieldOfView("fisheye_theta: radius beyond the image circle");
  }
  if (radius == 0.0) {
    return 0.0;
  }
  if (radius >= r_max) {
    return half;
  }

  // Damped Newton from the equidistant guess, bracketed on [0, fov/2].
  double lo = 0.0, hi = half;
  double t = std::min(std::max(radius / k.k[0], lo), hi);
  const double tol = kNewtonTolerance * std::max(1.0, radius);
  for (int it = 0; it < kNewtonMaxIterations; ++it) {
    const double f = radial_poly(t, k.k) - radius;
    if (std::abs(f) <= tol) {
      return t;
    }
    if (f > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    const double df = radial_poly_derivative(t, k.k);
    double next = t - f / df;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);  // damping: fall back to the bracket midpoint
    }
    if (next == t) {
      return t;
    }
    t = next;
  }
  // Bisection finishes the job for any monotone polynomial.
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) {
      break;
    }
    const double f = radial_poly(mid, k.k) - radius;
    if (std::abs(f) <= tol) {
      return mid;
    }
    if (f > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double t_final = 0.5 * (lo + hi);
  if (std::abs(radial_poly(t_final, k.k) - radius) > 1e-9 * std::max(1.0, radius)) {
    throw NumericalFailure("fisheye_theta: inversion did not converge");
  }
  return t_final;
}

namespace {

std::optional<Vec2> try_project_fisheye_impl(const Vec3& p, const CameraModel& cam) {
  const FisheyeIntrinsics& k = cam.fisheye();
  if (!finite(p) || (p.x == 0.0 && p.y == 0.0 && p.z == 0.0)) {
    return std::nullopt;
  }
  const double rho = std::hypot(p.y, p.z);
  const double theta = std::atan2(rho, p.x);  // incident angle from the optical axis
  if (theta > k.max_theta()) {
    return std::nullopt;
  }
  if (rho == 0.0) {
    return Vec2{k.cx, k.cy};
  }
  const double r = radial_poly(theta, k.k);
  // Image-plane azimuth: +z (camera right) maps to +u, +y (camera up) to -v.
  return Vec2{k.cx + r * (p.z / rho), k.cy - r * (p.y / rho)};
}

std::optional<Vec2> try_project_pinhole_impl(const Vec3& p, const CameraModel& cam) {
  const PinholeIntrinsics& k = cam.pinhole();
  if (!finite(p) || !(p.x > 0.0)) {
    return std::nullopt;
  }
  return Vec2{k.cx + k.fx * (p.z / p.x), k.cy - k.fy * (p.y / p.x)};
}

}  // namespace

Vec2 project_fisheye(const Vec3& p_cam, const CameraModel& cam) {
  auto px = try_project_fisheye_impl(p_cam, cam);
  if (!px) {
    throw OutOfFieldOfView("project_fisheye: ray outside fov/2 (camera '" + cam.id + "')");
  }
  return *px;
}

Vec3 unproject_fisheye(const Vec2& pixel, const CameraModel& cam) {
  const FisheyeIntrinsics& k = cam.fisheye();
  const double du = pixel.x - k.cx;
  const double dv = pixel.y - k.cy;
  const double r = std::hypot(du, dv);
  if (r == 0.0) {
    return {1.0, 0.0, 0.0};
  }
  const double theta = fisheye_theta(r, k);  // throws OutOfFieldOfView beyond the circle
  const double st = std::sin(theta);
  return {std::cos(theta), -st * (dv / r), st * (du / r)};
}

Vec2 project_pinhole(const Vec3& p_cam, const CameraModel& cam) {
  auto px = try_project_pinhole_impl(p_cam, cam);
  if (!px) {
    throw BehindCamera("project_pinhole: non-positive forward depth (camera '" + cam.id + "')");
  }
  return *px;
}

Vec3 unproject_pinhole(const Vec2& pixel, const CameraModel& cam) {
  const PinholeIntrinsics& k = cam.pinhole();
  const Vec3 ray{1.0, -(pixel.y - k.cy) / k.fy, (pixel.x - k.cx) / k.fx};
  return ray.normalized();
}

Vec2 project(const Vec3& p_cam, const CameraModel& cam) {
  return cam.lens == LensType::kFisheye ? project_fisheye(p_cam, cam) : project_pinhole(p_cam, cam);
}

std::optional<Vec2> try_project(const Vec3& p_cam, const CameraModel& cam) {
  return cam.lens == LensType::kFisheye ? try_project_fisheye_impl(p_cam, cam)
                                        : try_project_pinhole_impl(p_cam, cam);
}

Vec3 unproject(const Vec2& pixel, const CameraModel& cam) {
  return cam.lens == LensType::kFisheye ? unproject_fisheye(pixel, cam)
                                        : unproject_pinhole(pixel, cam);
}

Vec3 transform_point(const Vec3& p, const Extrinsics& m) {
  if (!finite(p)) {
    throw std::invalid_argument("transform_point: non-finite point");
  }
  return m.cam_to_ref.transform_point(p);
}

Extrinsics compose(const Extrinsics& m2, const Extrinsics& m1) {
  return Extrinsics(m2.cam_to_ref * m1.cam_to_ref);
}

}  // namespace fsv
