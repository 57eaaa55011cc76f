#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "fsv/warp.hpp"
#include "test_util.hpp"

using namespace fsv;
using fsv::test::Rng;

namespace {

CameraModel small_fisheye(double fov_deg = 220.0) {
  // k0 chosen so the image circle nearly fills the 200x200 frame.
  const double half = deg2rad(fov_deg) / 2.0;
  const std::array<double, 5> k = {96.0 / half, 0.0, 0.0, 0.0, 0.0};
  return CameraModel("fish", FisheyeIntrinsics(k, 100.0, 100.0, deg2rad(fov_deg)), Extrinsics(),
                     200, 200);
}

// Independent scalar re-derivation of one grid cell for the equirect case.
struct OracleCell {
  double u_norm = 0.0, v_norm = 0.0;
  bool valid = false;
};

OracleCell equirect_cell_oracle(const CameraModel& cam, int i, int j, int height, int width,
                                double phi_min, double phi_max, double theta_min,
                                double theta_max) {
  OracleCell cell;
  const double phi = phi_min + (phi_max - phi_min) * (j + 0.5) / width;
  const double theta = theta_max - (theta_max - theta_min) * (i + 0.5) / height;
  if (theta < -kPi / 2 || theta > kPi / 2) {
    return cell;
  }
  const double ct = std::cos(theta);
  const double x = ct * std::cos(phi), y = std::sin(theta), z = ct * std::sin(phi);
  const FisheyeIntrinsics& intr = cam.fisheye();
  const double incident = std::atan2(std::hypot(y, z), x);
  if (incident > intr.fov / 2.0) {
    return cell;
  }
  double u = intr.cx, v = intr.cy;
  const double rho = std::hypot(y, z);
  if (rho > 0.0) {
    double r = 0.0, power = incident;
    for (int n = 0; n < 5; ++n) {
      r += intr.k[static_cast<std::size_t>(n)] * power;
      power *= incident * incident;
    }
    u = intr.cx + r * (z / rho);
    v = intr.cy - r * (y / rho);
  }
  if (!(u >= 0.0 && u < cam.width && v >= 0.0 && v < cam.height)) {
    return cell;
  }
  cell.u_norm = 2.0 * u / cam.width - 1.0;
  cell.v_norm = 2.0 * v / cam.height - 1.0;
  cell.valid = true;
  return cell;
}

// Reference bilinear sampler, written against the normalized-coordinate
// definition rather than the library internals.
float bilinear_oracle(const FeatureMap& src, double u_norm, double v_norm, int c) {
  const double u = (u_norm + 1.0) * src.width / 2.0;
  const double v = (v_norm + 1.0) * src.height / 2.0;
  const double x = u - 0.5, y = v - 0.5;
  const int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
  const double fx = x - x0, fy = y - y0;
  double acc = 0.0;
  for (int dy = 0; dy <= 1; ++dy) {
    for (int dx = 0; dx <= 1; ++dx) {
      const int xx = x0 + dx, yy = y0 + dy;
      if (xx < 0 || xx >= src.width || yy < 0 || yy >= src.height) {
        continue;
      }
      const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy);
      acc += w * src.at(yy, xx, c);
    }
  }
  return static_cast<float>(acc);
}

SamplingGrid identity_grid(int height, int width) {
  SamplingGrid g;
  g.height = height;
  g.width = width;
  g.coords.resize(static_cast<std::size_t>(height) * width * 2);
  g.valid.assign(static_cast<std::size_t>(height) * width, 1);
  for (int i = 0; i < height; ++i) {
    for (int j = 0; j < width; ++j) {
      const std::size_t cell = static_cast<std::size_t>(i) * width + j;
      g.coords[2 * cell] = static_cast<float>(2.0 * (j + 0.5) / width - 1.0);
      g.coords[2 * cell + 1] = static_cast<float>(2.0 * (i + 0.5) / height - 1.0);
    }
  }
  return g;
}

SamplingGrid random_interior_grid(Rng& rng, int height, int width, int src_h, int src_w) {
  // Valid samples kept a half pixel inside the source so all four taps land
  // in bounds (the convex-combination regime).
  SamplingGrid g;
  g.height = height;
  g.width = width;
  g.coords.resize(static_cast<std::size_t>(height) * width * 2);
  g.valid.resize(static_cast<std::size_t>(height) * width);
  for (std::size_t cell = 0; cell < g.valid.size(); ++cell) {
    const double u = rng.uniform(0.5, src_w - 0.5);
    const double v = rng.uniform(0.5, src_h - 0.5);
    g.coords[2 * cell] = static_cast<float>(2.0 * u / src_w - 1.0);
    g.coords[2 * cell + 1] = static_cast<float>(2.0 * v / src_h - 1.0);
    g.valid[cell] = rng.uniform_int(5) > 0 ? 1 : 0;
  }
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("warp");

TEST_CASE("build_grid maps the forward ray to the principal point") {
  const CameraModel cam = small_fisheye();
  const GridSpec spec = GridSpec::equirect(17, 17, -0.5, 0.5, -0.5, 0.5);
  const SamplingGrid grid = build_grid(spec, cam);
  // Center cell of the symmetric 17x17 patch has (phi, theta) = (0, 0).
  CHECK(grid.is_valid(8, 8));
  CHECK(grid.u_norm(8, 8) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(grid.v_norm(8, 8) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("build_grid flags cells beyond the field of view invalid") {
  const CameraModel cam = small_fisheye(180.0);
  // Columns reach out to 120 degrees azimuth, beyond the 90-degree half fov.
  const GridSpec spec = GridSpec::equirect(9, 33, deg2rad(-120), deg2rad(120), -0.2, 0.2);
  const SamplingGrid grid = build_grid(spec, cam);
  CHECK(!grid.is_valid(4, 0));
  CHECK(!grid.is_valid(4, 32));
  CHECK(grid.is_valid(4, 16));
}

TEST_CASE("build_grid matches the per-cell compositional oracle") {
  const CameraModel cam = small_fisheye();
  const double b = deg2rad(110.0);
  const GridSpec spec = GridSpec::equirect(16, 32, -b, b, -b, b);
  const SamplingGrid grid = build_grid(spec, cam);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 32; ++j) {
      const OracleCell cell = equirect_cell_oracle(cam, i, j, 16, 32, -b, b, -b, b);
      REQUIRE(grid.is_valid(i, j) == cell.valid);
      if (cell.valid) {
        CHECK(std::abs(grid.u_norm(i, j) - cell.u_norm) < 1e-6);
        CHECK(std::abs(grid.v_norm(i, j) - cell.v_norm) < 1e-6);
      }
    }
  }
}

TEST_CASE("build_grid is deterministic") {
  const CameraModel cam = small_fisheye();
  const GridSpec spec = GridSpec::equirect_for(cam, 32, 64);
  const SamplingGrid a = build_grid(spec, cam);
  const SamplingGrid b = build_grid(spec, cam);
  CHECK(std::memcmp(a.coords.data(), b.coords.data(), a.coords.size() * sizeof(float)) == 0);
  CHECK(a.valid == b.valid);
}

TEST_CASE("apply_grid identity is bit-exact") {
  Rng rng(31);
  FeatureMap src(9, 13, 2);
  for (float& v : src.data) {
    v = static_cast<float>(rng.uniform(-10, 10));
  }
  const SamplingGrid grid = identity_grid(9, 13);
  const FeatureMap nearest = apply_grid(src, grid, SampleMode::kNearest);
  CHECK(std::memcmp(nearest.data.data(), src.data.data(), src.data.size() * sizeof(float)) == 0);
  // Bilinear reproduces the input only up to the float32 grid coordinates.
  const FeatureMap bilinear = apply_grid(src, grid, SampleMode::kBilinear);
  for (std::size_t i = 0; i < src.data.size(); ++i) {
    CHECK(std::abs(bilinear.data[i] - src.data[i]) < 1e-4);
  }
}

TEST_CASE("apply_grid of a constant map is constant on valid cells") {
  Rng rng(37);
  FeatureMap src(8, 8, 1);
  for (float& v : src.data) {
    v = 3.25f;
  }
  const SamplingGrid grid = random_interior_grid(rng, 6, 7, 8, 8);
  const FeatureMap out = apply_grid(src, grid, SampleMode::kBilinear);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 7; ++j) {
      if (grid.is_valid(i, j)) {
        CHECK(out.at(i, j, 0) == doctest::Approx(3.25).epsilon(1e-6));
      } else {
        CHECK(out.at(i, j, 0) == 0.0f);
      }
    }
  }
}

TEST_CASE("apply_grid matches the scalar bilinear oracle") {
  Rng rng(41);
  FeatureMap src(8, 8, 1);
  for (float& v : src.data) {
    v = static_cast<float>(rng.uniform(0, 100));
  }
  const SamplingGrid grid = random_interior_grid(rng, 8, 8, 8, 8);
  const FeatureMap out = apply_grid(src, grid, SampleMode::kBilinear);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const float expected =
          grid.is_valid(i, j) ? bilinear_oracle(src, grid.u_norm(i, j), grid.v_norm(i, j), 0) : 0.0f;
      CHECK(std::abs(out.at(i, j, 0) - expected) < 1e-5);
    }
  }
}

TEST_CASE("bilinear sampling is exact for affine maps") {
  Rng rng(43);
  const double a = 0.7, b = -1.3, c = 4.0;
  FeatureMap src(12, 10, 1);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 10; ++j) {
      src.at(i, j, 0) = static_cast<float>(a * i + b * j + c);
    }
  }
  const SamplingGrid grid = random_interior_grid(rng, 20, 20, 12, 10);
  const FeatureMap out = apply_grid(src, grid, SampleMode::kBilinear);
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      if (!grid.is_valid(i, j)) {
        continue;
      }
      const double x = (grid.u_norm(i, j) + 1.0) * 10 / 2.0 - 0.5;  // column position
      const double y = (grid.v_norm(i, j) + 1.0) * 12 / 2.0 - 0.5;  // row position
      CHECK(std::abs(out.at(i, j, 0) - (a * y + b * x + c)) < 1e-4);
    }
  }
}

TEST_CASE("valid cells are convex combinations, invalid cells exactly zero") {
  Rng rng(47);
  FeatureMap src(10, 10, 1);
  for (float& v : src.data) {
    v = static_cast<float>(rng.uniform(-50, 50));
  }
  float lo = src.data[0], hi = src.data[0];
  for (float v : src.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const SamplingGrid grid = random_interior_grid(rng, 16, 16, 10, 10);
  const FeatureMap out = apply_grid(src, grid, SampleMode::kBilinear);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      if (grid.is_valid(i, j)) {
        CHECK(out.at(i, j, 0) >= lo - 1e-5f);
        CHECK(out.at(i, j, 0) <= hi + 1e-5f);
      } else {
        CHECK(out.at(i, j, 0) == 0.0f);
      }
    }
  }
}

TEST_CASE("warp linearity for bilinear mode") {
  Rng rng(53);
  FeatureMap a(7, 7, 1), b(7, 7, 1), combo(7, 7, 1);
  const double alpha = 0.6, beta = -1.7;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    a.data[i] = static_cast<float>(rng.uniform(-1, 1));
    b.data[i] = static_cast<float>(rng.uniform(-1, 1));
    combo.data[i] = static_cast<float>(alpha * a.data[i] + beta * b.data[i]);
  }
  const SamplingGrid grid = random_interior_grid(rng, 9, 9, 7, 7);
  const FeatureMap wa = apply_grid(a, grid, SampleMode::kBilinear);
  const FeatureMap wb = apply_grid(b, grid, SampleMode::kBilinear);
  const FeatureMap wc = apply_grid(combo, grid, SampleMode::kBilinear);
  for (std::size_t i = 0; i < wc.data.size(); ++i) {
    CHECK(std::abs(wc.data[i] - (alpha * wa.data[i] + beta * wb.data[i])) < 1e-6);
  }
}

TEST_CASE("rectify_image equirect center equals the principal-point pixel") {
  const CameraModel cam = small_fisheye();
  Image8 image(cam.width, cam.height);
  Rng rng(59);
  for (std::uint8_t& v : image.data) {
    v = static_cast<std::uint8_t>(rng.uniform_int(256));
  }
  const GridSpec spec = GridSpec::equirect(21, 21, -0.4, 0.4, -0.4, 0.4);
  const Image8 out = rectify_image(image, cam, spec, SampleMode::kNearest);
  // (cx, cy) = (100, 100) lies in source pixel (100, 100).
  for (int c = 0; c < 3; ++c) {
    CHECK(out.at(10, 10, c) == image.at(100, 100, c));
  }
}

TEST_CASE("rectify_image with no valid region is black") {
  const CameraModel cam = small_fisheye(180.0);
  Image8 image(cam.width, cam.height);
  for (std::uint8_t& v : image.data) {
    v = 200;
  }
  // A patch looking straight backward, entirely outside a 180-degree lens.
  const GridSpec spec = GridSpec::equirect(8, 8, deg2rad(160.0), deg2rad(200.0), -0.1, 0.1);
  const Image8 out = rectify_image(image, cam, spec, SampleMode::kBilinear);
  for (std::uint8_t v : out.data) {
    CHECK(v == 0);
  }
}

TEST_CASE("grid dump round trip") {
  fsv::test::TempDir dir("grid");
  const CameraModel cam = small_fisheye();
  const SamplingGrid grid = build_grid(GridSpec::equirect_for(cam, 24, 48), cam);
  const std::string path = dir.str("grid.bin");
  save_grid(grid, path);
  const SamplingGrid loaded = load_grid(path);
  REQUIRE(loaded.height == grid.height);
  REQUIRE(loaded.width == grid.width);
  CHECK(std::memcmp(loaded.coords.data(), grid.coords.data(),
                    grid.coords.size() * sizeof(float)) == 0);
  CHECK(loaded.valid == grid.valid);

  std::ofstream bad(dir.str("bad.bin"), std::ios::binary);
  bad << "NOTAGRID" << std::string(64, '\0');
  bad.close();
  CHECK_THROWS_AS(load_grid(dir.str("bad.bin")), DataError);
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec::equirect(0, 8, -1, 1, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::equirect(8, 8, 1, -1, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::perspective(8, 8, 0.0), std::invalid_argument);
}

TEST_CASE("perspective and cylindrical grid directions") {
  // Perspective center ray is the optical axis.
  const GridSpec persp = GridSpec::perspective(9, 9, 50.0);
  const auto center = persp.direction(4, 4);
  REQUIRE(center.has_value());
  CHECK((center->normalized() - Vec3{1, 0, 0}).norm() < 1e-12);

  // Cylindrical center of a patch centered at phi = pi/2 is the optical axis.
  const GridSpec cyl = GridSpec::cylindrical(9, 9, kPi / 2 - 1.0, kPi / 2 + 1.0, -1.0, 1.0);
  const auto cyl_center = cyl.direction(4, 4);
  REQUIRE(cyl_center.has_value());
  CHECK((cyl_center->normalized() - Vec3{1, 0, 0}).norm() < 1e-12);

  // Equirect rows beyond the poles expose no direction; grid_directions throws.
  const GridSpec wide = GridSpec::equirect(8, 8, -2.0, 2.0, -2.0, 2.0);
  CHECK_THROWS_AS(grid_directions(wide), DataError);
  CHECK(grid_directions(persp).size() == 81);
}

TEST_SUITE_END();
