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

#include "fsv/warp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace fsv {

namespace {

constexpr char kGridMagic[8] = {'F', 'S', 'V', 'G', 'R', 'I', 'D', '1'};

}  // namespace

GridSpec GridSpec::equirect(int height, int width, double phi_min, double phi_max,
                            double theta_min, double theta_max) {
  GridSpec s;
  s.kind = TargetKind::kEquirect;
  s.height = height;
  s.width = width;
  s.phi_min = phi_min;
  s.phi_max = phi_max;
  s.theta_min = theta_min;
  s.theta_max = theta_max;
  s.validate();
  return s;
}

GridSpec GridSpec::cylindrical(int height, int width, double phi_min, double phi_max, double y_min,
                               double y_max) {
  GridSpec s;
  s.kind = TargetKind::kCylindrical;
  s.height = height;
  s.width = width;
  s.phi_min = phi_min;
  s.phi_max = phi_max;
  s.theta_min = y_min;
  s.theta_max = y_max;
  s.validate();
  return s;
}

GridSpec GridSpec::perspective(int height, int width, double focal) {
  GridSpec s;
  s.kind = TargetKind::kPerspective;
  s.height = height;
  s.width = width;
  s.focal = focal;
  s.validate();
  return s;
}

GridSpec GridSpec::equirect_for(const CameraModel& cam, int height, int width) {
  const double half = cam.fisheye().max_theta();
  return equirect(height, width, -half, half, -half, half);
}

void GridSpec::validate() const {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("GridSpec: height and width must be >= 1");
  }
  if (kind == TargetKind::kPerspective) {
    if (!(focal > 0.0)) {
      throw std::invalid_argument("GridSpec: perspective focal must be positive");
    }
    return;
  }
  if (!(phi_max > phi_min) || !(theta_max > theta_min)) {
    throw std::invalid_argument("GridSpec: bounds must satisfy max > min");
  }
}

std::optional<Vec3> GridSpec::direction(int row, int col) const {
  const double fx = (static_cast<double>(col) + 0.5) / width;
  const double fy = (static_cast<double>(row) + 0.5) / height;
  switch (kind) {
    case TargetKind::kEquirect: {
      const double phi = phi_min + (phi_max - phi_min) * fx;
      const double theta = theta_max - (theta_max - theta_min) * fy;
      if (theta < -kPi / 2.0 || theta > kPi / 2.0) {
        return std::nullopt;  // no physical direction at this parameter cell
      }
      const double ct = std::cos(theta);
      return Vec3{ct * std::cos(phi), std::sin(theta), ct * std::sin(phi)};
    }
    case TargetKind::kCylindrical: {
      const double phi = phi_min + (phi_max - phi_min) * fx;
      const double y = theta_max - (theta_max - theta_min) * fy;
      return direction_cylindrical(phi, y);
    }
    case TargetKind::kPerspective: {
      const double u = fx * width;   // continuous pixel coordinates
      const double v = fy * height;
      const Vec3 ray{1.0, -(v - height / 2.0) / focal, (u - width / 2.0) / focal};
      return ray.normalized();
    }
  }
  return std::nullopt;
}

double normalized_coord(double u, int size) { return 2.0 * u / size - 1.0; }

double denormalized_coord(double u_norm, int size) { return (u_norm + 1.0) * size / 2.0; }

SamplingGrid build_grid(const GridSpec& spec, const CameraModel& cam) {
  spec.validate();
  SamplingGrid grid;
  grid.height = spec.height;
  grid.width = spec.width;
  grid.coords.assign(static_cast<std::size_t>(spec.height) * spec.width * 2, 0.0f);
  grid.valid.assign(static_cast<std::size_t>(spec.height) * spec.width, 0);

  for (int i = 0; i < spec.height; ++i) {
    for (int j = 0; j < spec.width; ++j) {
      const std::size_t cell = static_cast<std::size_t>(i) * spec.width + j;
      const auto dir = spec.direction(i, j);
      if (!dir) {
        continue;
      }
      const auto px = try_project(*dir, cam);
      if (!px) {
        continue;
      }
      if (!(px->x >= 0.0 && px->x < cam.width && px->y >= 0.0 && px->y < cam.height)) {
        continue;
      }
      grid.coords[2 * cell] = static_cast<float>(normalized_coord(px->x, cam.width));
      grid.coords[2 * cell + 1] = static_cast<float>(normalized_coord(px->y, cam.height));
      grid.valid[cell] = 1;
    }
  }
  return grid;
}

namespace {

inline void sample_bilinear(const FeatureMap& src, double u, double v, float* out) {
  // u, v are continuous source coordinates; pixel centers at half-integers.
  const double xs = u - 0.5;
  const double ys = v - 0.5;
  const int j0 = static_cast<int>(std::floor(xs));
  const int i0 = static_cast<int>(std::floor(ys));
  const double wx = xs - j0;
  const double wy = ys - i0;
  const double w[4] = {(1.0 - wx) * (1.0 - wy), wx * (1.0 - wy), (1.0 - wx) * wy, wx * wy};
  const int jj[4] = {j0, j0 + 1, j0, j0 + 1};
  const int ii[4] = {i0, i0, i0 + 1, i0 + 1};
  for (int c = 0; c < src.channels; ++c) {
    double acc = 0.0;
    for (int t = 0; t < 4; ++t) {
      if (ii[t] >= 0 && ii[t] < src.height && jj[t] >= 0 && jj[t] < src.width) {
        acc += w[t] * src.at(ii[t], jj[t], c);
      }
      // out-of-image taps contribute zero
    }
    out[c] = static_cast<float>(acc);
  }
}

inline void sample_nearest(const FeatureMap& src, double u, double v, float* out) {
  const int j = static_cast<int>(std::floor(u));
  const int i = static_cast<int>(std::floor(v));
  if (i >= 0 && i < src.height && j >= 0 && j < src.width) {
    for (int c = 0; c < src.channels; ++c) {
      out[c] = src.at(i, j, c);
    }
  } else {
    std::fill(out, out + src.channels, 0.0f);
  }
}

}  // namespace

FeatureMap apply_grid(const FeatureMap& src, const SamplingGrid& grid, SampleMode mode) {
  if (src.height < 1 || src.width < 1 || src.channels < 1) {
    throw DimensionMismatch("apply_grid: empty source map");
  }
  FeatureMap out(grid.height, grid.width, src.channels);
  for (int i = 0; i < grid.height; ++i) {
    for (int j = 0; j < grid.width; ++j) {
      if (!grid.is_valid(i, j)) {
        continue;  // stays zero
      }
      const double u = denormalized_coord(grid.u_norm(i, j), src.width);
      const double v = denormalized_coord(grid.v_norm(i, j), src.height);
      float* dst = &out.at(i, j, 0);
      if (mode == SampleMode::kBilinear) {
        sample_bilinear(src, u, v, dst);
      } else {
        sample_nearest(src, u, v, dst);
      }
    }
  }
  return out;
}

FeatureMap image_to_feature_map(const Image8& image) {
  FeatureMap map(image.height, image.width, 3);
  for (std::size_t i = 0; i < image.data.size(); ++i) {
    map.data[i] = static_cast<float>(image.data[i]);
  }
  return map;
}

Image8 feature_map_to_image(const FeatureMap& map) {
  if (map.channels != 3) {
    throw DimensionMismatch("feature_map_to_image: expected 3 channels");
  }
  Image8 image(map.width, map.height);
  for (std::size_t i = 0; i < map.data.size(); ++i) {
    const double v = std::nearbyint(static_cast<double>(map.data[i]));  // half-to-even
    image.data[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return image;
}

Image8 rectify_image(const Image8& image, const CameraModel& cam, const GridSpec& spec,
                     SampleMode mode) {
  if (image.width != cam.width || image.height != cam.height) {
    throw DimensionMismatch("rectify_image: image size does not match the camera model");
  }
  const SamplingGrid grid = build_grid(spec, cam);
  const FeatureMap warped = apply_grid(image_to_feature_map(image), grid, mode);
  return feature_map_to_image(warped);
}

void save_grid(const SamplingGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_grid: cannot open " + path);
  }
  out.write(kGridMagic, sizeof(kGridMagic));
  const std::uint32_t dims[2] = {static_cast<std::uint32_t>(grid.height),
                                 static_cast<std::uint32_t>(grid.width)};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(grid.coords.data()),
            static_cast<std::streamsize>(grid.coords.size() * sizeof(float)));
  std::vector<std::uint8_t> bitmap((grid.valid.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < grid.valid.size(); ++i) {
    if (grid.valid[i]) {
      bitmap[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    }
  }
  out.write(reinterpret_cast<const char*>(bitmap.data()),
            static_cast<std::streamsize>(bitmap.size()));
  if (!out) {
    throw DataError("save_grid: write failed for " + path);
  }
}

SamplingGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("load_grid: cannot open " + path);
  }
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kGridMagic, sizeof(magic)) != 0) {
    throw DataError("load_grid: bad magic in " + path);
  }
  std::uint32_t dims[2];
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  if (!in || dims[0] == 0 || dims[1] == 0) {
    throw DataError("load_grid: bad dimensions in " + path);
  }
  SamplingGrid grid;
  grid.height = static_cast<int>(dims[0]);
  grid.width = static_cast<int>(dims[1]);
  const std::size_t cells = static_cast<std::size_t>(grid.height) * grid.width;
  grid.coords.resize(cells * 2);
  in.read(reinterpret_cast<char*>(grid.coords.data()),
          static_cast<std::streamsize>(grid.coords.size() * sizeof(float)));
  std::vector<std::uint8_t> bitmap((cells + 7) / 8);
  in.read(reinterpret_cast<char*>(bitmap.data()), static_cast<std::streamsize>(bitmap.size()));
  if (!in) {
    throw DataError("load_grid: truncated file " + path);
  }
  grid.valid.assign(cells, 0);
  for (std::size_t i = 0; i < cells; ++i) {
    grid.valid[i] = (bitmap[i / 8] >> (i % 8)) & 1u;
  }
  return grid;
}

std::vector<Vec3> grid_directions(const GridSpec& spec) {
  spec.validate();
  std::vector<Vec3> rays;
  rays.reserve(static_cast<std::size_t>(spec.height) * spec.width);
  for (int i = 0; i < spec.height; ++i) {
    for (int j = 0; j < spec.width; ++j) {
      const auto dir = spec.direction(i, j);
      if (!dir) {
        throw DataError("grid_directions: cell without a physical direction; shrink theta bounds");
      }
      rays.push_back(dir->normalized());
    }
  }
  return rays;
}

}  // namespace fsv
