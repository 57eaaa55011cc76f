#include <doctest.h>

#include <cmath>

#include "fsv/geometry.hpp"
#include "test_util.hpp"

using namespace fsv;
using fsv::test::Rng;

namespace {

// Independent oracle: term-by-term polynomial evaluation in extended precision.
long double radial_oracle(long double t, const std::array<double, 5>& k) {
  long double r = 0.0L;
  long double power = t;
  for (int i = 0; i < 5; ++i) {
    r += static_cast<long double>(k[i]) * power;
    power *= t * t;
  }
  return r;
}

// Independent oracle for the inverse: plain bisection on [0, theta_max].
double theta_bisection_oracle(double radius, const std::array<double, 5>& k, double theta_max) {
  double lo = 0.0, hi = theta_max;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2.0;
    if (static_cast<double>(radial_oracle(mid, k)) < radius) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) {
      break;
    }
  }
  return (lo + hi) / 2.0;
}

const std::array<double, 5> kTestK = {300.0, -0.02, 0.001, 0.0, 0.0};
const double kTestFov = deg2rad(220.0);

FisheyeIntrinsics test_fisheye() { return FisheyeIntrinsics(kTestK, 400.0, 400.0, kTestFov); }

CameraModel test_fisheye_camera() {
  // Wide intrinsics on a large sensor so the whole image circle is in bounds.
  return CameraModel("fish", FisheyeIntrinsics(kTestK, 640.0, 640.0, kTestFov), Extrinsics(),
                     1280, 1280);
}

CameraModel test_pinhole_camera() {
  return CameraModel("pin", PinholeIntrinsics(500.0, 500.0, 400.0, 400.0), Extrinsics(), 800, 800);
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("direction_from_angles axes") {
  const Vec3 fwd = direction_from_angles(0.0, 0.0);
  CHECK(fwd.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fwd.y == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fwd.z == doctest::Approx(0.0).epsilon(1e-15));

  const Vec3 right = direction_from_angles(kPi / 2, 0.0);
  CHECK(std::abs(right.x) < 1e-12);
  CHECK(std::abs(right.y) < 1e-12);
  CHECK(right.z == doctest::Approx(1.0));

  const Vec3 zenith = direction_from_angles(0.0, kPi / 2);
  CHECK(std::abs(zenith.x) < 1e-12);
  CHECK(zenith.y == doctest::Approx(1.0));
  CHECK(std::abs(zenith.z) < 1e-12);
}

TEST_CASE("direction_from_angles unit norm property") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double phi = rng.uniform(-kPi, kPi);
    const double theta = rng.uniform(-kPi / 2, kPi / 2);
    CHECK(std::abs(direction_from_angles(phi, theta).norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("direction_from_angles rejects out-of-range angles") {
  CHECK_THROWS_AS(direction_from_angles(4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(direction_from_angles(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(SphericalDirection(0.0, -2.0), std::invalid_argument);
}

TEST_CASE("direction_cylindrical") {
  const Vec3 a = direction_cylindrical(0.0, 0.0);
  CHECK(a.x == 0.0);
  CHECK(a.y == 0.0);
  CHECK(a.z == 1.0);
  const Vec3 b = direction_cylindrical(kPi / 2, 0.0);
  CHECK(b.x == doctest::Approx(1.0));
  CHECK(std::abs(b.z) < 1e-12);
  const Vec3 c = direction_cylindrical(0.0, 1.0);
  CHECK(c.x == 0.0);
  CHECK(c.y == 1.0);
  CHECK(c.z == 1.0);
}

TEST_CASE("fisheye_radius known values") {
  const FisheyeIntrinsics k = test_fisheye();
  CHECK(fisheye_radius(0.0, k) == 0.0);
  // All powers of theta equal 1, so the radius is the coefficient sum.
  CHECK(fisheye_radius(1.0, k) == doctest::Approx(299.981).epsilon(1e-12));
  const double expected = static_cast<double>(radial_oracle(0.5L, kTestK));
  CHECK(fisheye_radius(0.5, k) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("fisheye_radius rejects out-of-fov angles") {
  const FisheyeIntrinsics k = test_fisheye();
  CHECK_THROWS_AS(fisheye_radius(-0.1, k), OutOfFieldOfView);
  CHECK_THROWS_AS(fisheye_radius(k.max_theta() + 1e-6, k), OutOfFieldOfView);
}

TEST_CASE("fisheye intrinsics construction rejects non-monotone polynomials") {
  CHECK_THROWS_AS(FisheyeIntrinsics({100.0, -50.0, 0.0, 0.0, 0.0}, 400, 400, kTestFov),
                  std::invalid_argument);
  CHECK_THROWS_AS(FisheyeIntrinsics({-1.0, 0.0, 0.0, 0.0, 0.0}, 400, 400, kTestFov),
                  std::invalid_argument);
  CHECK_THROWS_AS(FisheyeIntrinsics({300.0, 0.0, 0.0, 0.0, 0.0}, 400, 400, 0.0),
                  std::invalid_argument);
}

TEST_CASE("fisheye_theta known values") {
  const FisheyeIntrinsics k = test_fisheye();
  CHECK(fisheye_theta(0.0, k) == 0.0);

  const FisheyeIntrinsics equidistant({300.0, 0.0, 0.0, 0.0, 0.0}, 400, 400, kTestFov);
  CHECK(fisheye_theta(300.0 * 0.7, equidistant) == doctest::Approx(0.7).epsilon(1e-12));

  const double expected = theta_bisection_oracle(150.0, kTestK, k.max_theta());
  CHECK(fisheye_theta(150.0, k) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fisheye_theta rejects out-of-circle radii") {
  const FisheyeIntrinsics k = test_fisheye();
  CHECK_THROWS_AS(fisheye_theta(-1.0, k), OutOfFieldOfView);
  CHECK_THROWS_AS(fisheye_theta(k.max_radius() + 1.0, k), OutOfFieldOfView);
}

TEST_CASE("fisheye radius/theta round trip and monotonicity") {
  const FisheyeIntrinsics k = test_fisheye();
  double prev = -1.0;
  for (int i = 0; i <= 10000; ++i) {
    const double theta = k.max_theta() * i / 10000.0;
    const double r = fisheye_radius(theta, k);
    CHECK(r > prev);  // strictly increasing on the grid
    prev = r;
    CHECK(std::abs(fisheye_theta(r, k) - theta) < 1e-9);
  }
}

TEST_CASE("project_fisheye principal point and scaling invariance") {
  const CameraModel cam = test_fisheye_camera();
  const Vec2 axis = project_fisheye({3.0, 0.0, 0.0}, cam);
  CHECK(axis.x == doctest::Approx(640.0));
  CHECK(axis.y == doctest::Approx(640.0));

  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const double theta = rng.uniform(0.0, cam.fisheye().max_theta() * 0.999);
    const double psi = rng.uniform(-kPi, kPi);
    const Vec3 p{std::cos(theta), std::sin(theta) * std::sin(psi), std::sin(theta) * std::cos(psi)};
    const double lambda = rng.uniform(0.1, 50.0);
    const Vec2 a = project_fisheye(p, cam);
    const Vec2 b = project_fisheye(lambda * p, cam);
    CHECK(std::abs(a.x - b.x) < 1e-9);
    CHECK(std::abs(a.y - b.y) < 1e-9);
  }
}

TEST_CASE("project_fisheye matches the two-step trigonometric oracle") {
  const CameraModel cam = test_fisheye_camera();
  const FisheyeIntrinsics& k = cam.fisheye();
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p{rng.uniform(-1, 3), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double theta = std::atan2(std::hypot(p.y, p.z), p.x);
    if (theta > k.max_theta() || (p.y == 0 && p.z == 0)) {
      continue;
    }
    // Independent route: incident angle + image-plane azimuth, then the
    // radial polynomial evaluated term by term.
    const double r = static_cast<double>(radial_oracle(theta, k.k));
    const double psi = std::atan2(-p.y, p.z);
    const double u = k.cx + r * std::cos(psi);
    const double v = k.cy + r * std::sin(psi);
    const Vec2 px = project_fisheye(p, cam);
    CHECK(std::abs(px.x - u) < 1e-8);
    CHECK(std::abs(px.y - v) < 1e-8);
  }
}

TEST_CASE("project_fisheye rejects rays beyond fov/2") {
  const CameraModel cam = test_fisheye_camera();
  CHECK_THROWS_AS(project_fisheye({-1.0, 0.0, 0.1}, cam), OutOfFieldOfView);
}

TEST_CASE("unproject_fisheye inverse contract") {
  const CameraModel cam = test_fisheye_camera();
  const Vec3 axis = unproject_fisheye({640.0, 640.0}, cam);
  CHECK(axis.x == doctest::Approx(1.0));

  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const double theta = rng.uniform(0.0, cam.fisheye().max_theta());
    const double psi = rng.uniform(-kPi, kPi);
    const Vec3 p{std::cos(theta), std::sin(theta) * std::sin(psi), std::sin(theta) * std::cos(psi)};
    const Vec3 back = unproject_fisheye(project_fisheye(p, cam), cam);
    CHECK(angle_between(back, p) < 1e-9);
    const Vec2 again = project_fisheye(back, cam);
    const Vec2 first = project_fisheye(p, cam);
    CHECK(std::abs(again.x - first.x) < 1e-6);
    CHECK(std::abs(again.y - first.y) < 1e-6);
  }
}

TEST_CASE("unproject_fisheye at the image-circle boundary") {
  const CameraModel cam = test_fisheye_camera();
  const FisheyeIntrinsics& k = cam.fisheye();
  const double r_max = k.max_radius();
  const Vec3 ray = unproject_fisheye({k.cx + r_max, k.cy}, cam);
  const double theta = std::acos(ray.x);
  const double expected = theta_bisection_oracle(r_max, k.k, k.max_theta());
  CHECK(std::abs(theta - expected) < 1e-8);
  CHECK(std::abs(theta - k.max_theta()) < 1e-8);

  CHECK_THROWS_AS(unproject_fisheye({k.cx + r_max + 1.0, k.cy}, cam), OutOfFieldOfView);
}

TEST_CASE("project_pinhole similar triangles") {
  const CameraModel cam = test_pinhole_camera();
  const Vec2 axis = project_pinhole({7.0, 0.0, 0.0}, cam);
  CHECK(axis.x == doctest::Approx(400.0));
  CHECK(axis.y == doctest::Approx(400.0));

  // Lateral 1 m at 5 m depth with f = 500 px: 100 px offset.
  const Vec2 lateral = project_pinhole({5.0, 0.0, 1.0}, cam);
  CHECK(lateral.x == doctest::Approx(500.0));
  CHECK(lateral.y == doctest::Approx(400.0));
  const Vec2 above = project_pinhole({5.0, 1.0, 0.0}, cam);
  CHECK(above.y == doctest::Approx(300.0));

  CHECK_THROWS_AS(project_pinhole({-1.0, 0.0, 0.0}, cam), BehindCamera);
  CHECK_THROWS_AS(project_pinhole({0.0, 1.0, 0.0}, cam), BehindCamera);
}

TEST_CASE("project_pinhole matches the homogeneous-matrix oracle") {
  const CameraModel cam = test_pinhole_camera();
  Rng rng(19);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 p{rng.uniform(0.1, 20.0), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    // Oracle: permute (x fwd, y up, z right) into the usual CV frame
    // (x right, y down, z forward), then apply K in homogeneous form.
    const double xc = p.z, yc = -p.y, zc = p.x;
    const double u = (500.0 * xc + 400.0 * zc) / zc;
    const double v = (500.0 * yc + 400.0 * zc) / zc;
    const Vec2 px = project_pinhole(p, cam);
    CHECK(std::abs(px.x - u) < 1e-9);
    CHECK(std::abs(px.y - v) < 1e-9);
    const Vec3 back = unproject_pinhole(px, cam);
    CHECK(angle_between(back, p) < 1e-12);
  }
}

TEST_CASE("transform_point") {
  const Vec3 p{1.0, 2.0, 3.0};
  SUBCASE("identity") {
    const Vec3 q = transform_point(p, Extrinsics());
    CHECK(q.x == 1.0);
    CHECK(q.y == 2.0);
    CHECK(q.z == 3.0);
  }
  SUBCASE("pure translation") {
    Mat4 m = Mat4::identity();
    m.at(0, 3) = 10.0;
    m.at(1, 3) = -4.0;
    m.at(2, 3) = 0.5;
    const Vec3 q = transform_point(p, Extrinsics(m));
    CHECK(q.x == doctest::Approx(11.0));
    CHECK(q.y == doctest::Approx(-2.0));
    CHECK(q.z == doctest::Approx(3.5));
  }
  SUBCASE("random rigid transforms match the 4x4 multiply oracle") {
    Rng rng(23);
    for (int i = 0; i < 500; ++i) {
      const Mat4 m = fsv::test::random_rigid(rng);
      const Vec3 v{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
      long double q[3] = {0.0L, 0.0L, 0.0L};
      const long double hom[4] = {v.x, v.y, v.z, 1.0L};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 4; ++c) {
          q[r] += static_cast<long double>(m.at(r, c)) * hom[c];
        }
      }
      const Vec3 got = transform_point(v, Extrinsics(m));
      CHECK(std::abs(got.x - static_cast<double>(q[0])) < 1e-9);
      CHECK(std::abs(got.y - static_cast<double>(q[1])) < 1e-9);
      CHECK(std::abs(got.z - static_cast<double>(q[2])) < 1e-9);
    }
  }
}

TEST_CASE("frame composition property") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const Extrinsics m1(fsv::test::random_rigid(rng));
    const Extrinsics m2(fsv::test::random_rigid(rng));
    const Vec3 p{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const Vec3 a = transform_point(transform_point(p, m1), m2);
    const Vec3 b = transform_point(p, compose(m2, m1));
    CHECK((a - b).norm() < 1e-9);
  }
}

TEST_CASE("extrinsics validation") {
  Mat4 skew = Mat4::identity();
  skew.at(0, 1) = 0.1;
  CHECK_THROWS_AS(Extrinsics{skew}, std::invalid_argument);

  Mat4 mirror = Mat4::identity();
  mirror.at(0, 0) = -1.0;  // orthonormal but determinant -1
  CHECK_THROWS_AS(Extrinsics{mirror}, std::invalid_argument);

  Mat4 bad_row = Mat4::identity();
  bad_row.at(3, 0) = 0.5;
  CHECK_THROWS_AS(Extrinsics{bad_row}, std::invalid_argument);
}

TEST_CASE("look_extrinsics basis") {
  // Identity pose: camera forward/up/right map to ref +x/+z/-y.
  const Extrinsics e = look_extrinsics({0, 0, 0}, 0.0);
  const Vec3 fwd = e.cam_to_ref.rotate({1, 0, 0});
  const Vec3 up = e.cam_to_ref.rotate({0, 1, 0});
  const Vec3 right = e.cam_to_ref.rotate({0, 0, 1});
  CHECK((fwd - Vec3{1, 0, 0}).norm() < 1e-12);
  CHECK((up - Vec3{0, 0, 1}).norm() < 1e-12);
  CHECK((right - Vec3{0, -1, 0}).norm() < 1e-12);

  // Yawed to the left: forward is +y.
  const Extrinsics left = look_extrinsics({0, 0, 0}, kPi / 2);
  CHECK((left.cam_to_ref.rotate({1, 0, 0}) - Vec3{0, 1, 0}).norm() < 1e-12);

  // Pitched straight up: forward is +z.
  const Extrinsics up_cam = look_extrinsics({0, 0, 0}, 0.0, kPi / 2);
  CHECK((up_cam.cam_to_ref.rotate({1, 0, 0}) - Vec3{0, 0, 1}).norm() < 1e-12);
}

TEST_CASE("camera model validation") {
  CHECK_THROWS_AS(CameraModel("x", PinholeIntrinsics(500, 500, 400, 400), Extrinsics(), 0, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(CameraModel("x", PinholeIntrinsics(500, 500, 900, 400), Extrinsics(), 800, 800),
                  std::invalid_argument);
  const CameraModel pin = test_pinhole_camera();
  CHECK_THROWS_AS(pin.fisheye(), std::logic_error);
}

TEST_SUITE_END();
