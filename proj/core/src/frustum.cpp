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

#include "fsv/frustum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "fsv/image.hpp"

namespace fsv {

void DepthBinning::validate() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("DepthBinning: need 0 < r_min < r_max");
  }
  if (count < 1) {
    throw std::invalid_argument("DepthBinning: count must be >= 1");
  }
}

std::vector<double> depth_levels(const DepthBinning& binning) {
  binning.validate();
  const int d_count = binning.count;
  std::vector<double> radii(static_cast<std::size_t>(d_count));
  if (binning.spacing == DepthSpacing::kUniform) {
    const double delta = (binning.r_max - binning.r_min) / d_count;
    for (int d = 0; d < d_count; ++d) {
      radii[static_cast<std::size_t>(d)] = binning.r_min + d * delta;
    }
  } else {
    const double scale =
        (binning.r_max - binning.r_min) / (static_cast<double>(d_count) * (d_count + 1));
    for (int d = 1; d <= d_count; ++d) {
      radii[static_cast<std::size_t>(d - 1)] =
          binning.r_min + scale * static_cast<double>(d) * (d + 1);
    }
  }
  return radii;
}

FrustumShellSet build_frustum(const std::vector<Vec3>& rays, int height, int width,
                              const DepthBinning& binning, const Extrinsics& extrinsics,
                              const std::string& camera_id) {
  if (rays.size() != static_cast<std::size_t>(height) * width) {
    throw DimensionMismatch("build_frustum: ray count does not match height*width");
  }
  const std::vector<double> radii = depth_levels(binning);
  FrustumShellSet out;
  out.depth_count = binning.count;
  out.height = height;
  out.width = width;
  out.frame = "reference";
  out.camera_id = camera_id;
  out.points.resize(radii.size() * rays.size());
  std::size_t idx = 0;
  for (double r : radii) {
    for (const Vec3& ray : rays) {
      out.points[idx++] = transform_point(r * ray, extrinsics);
    }
  }
  return out;
}

LiftedVolume lift(const FeatureMap& features, const FeatureMap& depth_logits) {
  if (features.height != depth_logits.height || features.width != depth_logits.width) {
    throw DimensionMismatch("lift: feature and logit maps have different spatial sizes");
  }
  const int d_count = depth_logits.channels;
  LiftedVolume out;
  out.depth_count = d_count;
  out.height = features.height;
  out.width = features.width;
  out.channels = features.channels;
  out.features.assign(
      static_cast<std::size_t>(d_count) * features.height * features.width * features.channels,
      0.0f);
  out.alpha.assign(static_cast<std::size_t>(d_count) * features.height * features.width, 0.0f);

  std::vector<double> expv(static_cast<std::size_t>(d_count));
  for (int h = 0; h < features.height; ++h) {
    for (int w = 0; w < features.width; ++w) {
      double max_logit = depth_logits.at(h, w, 0);
      for (int d = 1; d < d_count; ++d) {
        max_logit = std::max(max_logit, static_cast<double>(depth_logits.at(h, w, d)));
      }
      double sum = 0.0;
      for (int d = 0; d < d_count; ++d) {
        expv[static_cast<std::size_t>(d)] =
            std::exp(static_cast<double>(depth_logits.at(h, w, d)) - max_logit);
        sum += expv[static_cast<std::size_t>(d)];
      }
      for (int d = 0; d < d_count; ++d) {
        const double a = expv[static_cast<std::size_t>(d)] / sum;
        const std::size_t cell = (static_cast<std::size_t>(d) * out.height + h) * out.width + w;
        out.alpha[cell] = static_cast<float>(a);
        for (int c = 0; c < features.channels; ++c) {
          out.features[cell * features.channels + c] =
              static_cast<float>(a * features.at(h, w, c));
        }
      }
    }
  }
  return out;
}

void BevGridSpec::validate() const {
  if (!(cell > 0.0) || !(x_max > x_min) || !(y_max > y_min) || !(z_max > z_min)) {
    throw std::invalid_argument("BevGridSpec: degenerate extents");
  }
  const double nx_f = (x_max - x_min) / cell;
  const double ny_f = (y_max - y_min) / cell;
  if (std::abs(nx_f - std::round(nx_f)) > 1e-9 || std::abs(ny_f - std::round(ny_f)) > 1e-9) {
    throw std::invalid_argument("BevGridSpec: extent is not a whole number of cells");
  }
}

int BevGridSpec::nx() const { return static_cast<int>(std::round((x_max - x_min) / cell)); }
int BevGridSpec::ny() const { return static_cast<int>(std::round((y_max - y_min) / cell)); }

namespace {

// Shared double-precision accumulator keeps the pooled sums exact enough for
// the permutation-invariance contract.
struct BevAccumulator {
  BevGridSpec spec;
  int channels = 0;
  std::vector<double> sums;
};

void accumulate(BevAccumulator& acc, const LiftedVolume& volume, const FrustumShellSet& frustum) {
  if (volume.depth_count != frustum.depth_count || volume.height != frustum.height ||
      volume.width != frustum.width) {
    throw DimensionMismatch("splat: volume and frustum shapes differ");
  }
  const BevGridSpec& spec = acc.spec;
  const int nx = spec.nx();
  const int ny = spec.ny();
  std::size_t idx = 0;
  for (int d = 0; d < volume.depth_count; ++d) {
    for (int h = 0; h < volume.height; ++h) {
      for (int w = 0; w < volume.width; ++w, ++idx) {
        const Vec3& p = frustum.points[idx];
        if (p.x < spec.x_min || p.x >= spec.x_max || p.y < spec.y_min || p.y >= spec.y_max ||
            p.z < spec.z_min || p.z > spec.z_max) {
          continue;
        }
        int ix = static_cast<int>(std::floor((p.x - spec.x_min) / spec.cell));
        int iy = static_cast<int>(std::floor((p.y - spec.y_min) / spec.cell));
        ix = std::clamp(ix, 0, nx - 1);
        iy = std::clamp(iy, 0, ny - 1);
        const std::size_t base = (static_cast<std::size_t>(iy) * nx + ix) * acc.channels;
        const std::size_t src = idx * static_cast<std::size_t>(volume.channels);
        for (int c = 0; c < volume.channels; ++c) {
          acc.sums[base + c] += volume.features[src + c];
        }
      }
    }
  }
}

BevGrid finish(const BevAccumulator& acc) {
  BevGrid bev;
  bev.spec = acc.spec;
  bev.channels = acc.channels;
  bev.data.resize(acc.sums.size());
  for (std::size_t i = 0; i < acc.sums.size(); ++i) {
    bev.data[i] = static_cast<float>(acc.sums[i]);
  }
  return bev;
}

}  // namespace

BevGrid splat(const LiftedVolume& volume, const FrustumShellSet& frustum, const BevGridSpec& spec) {
  spec.validate();
  BevAccumulator acc{spec, volume.channels,
                     std::vector<double>(
                         static_cast<std::size_t>(spec.nx()) * spec.ny() * volume.channels, 0.0)};
  accumulate(acc, volume, frustum);
  return finish(acc);
}

void splat_into(BevGrid& bev, const LiftedVolume& volume, const FrustumShellSet& frustum) {
  if (bev.channels != volume.channels) {
    throw DimensionMismatch("splat_into: channel counts differ");
  }
  BevAccumulator acc{bev.spec, bev.channels, std::vector<double>(bev.data.size())};
  for (std::size_t i = 0; i < bev.data.size(); ++i) {
    acc.sums[i] = bev.data[i];
  }
  accumulate(acc, volume, frustum);
  bev = finish(acc);
}

void save_bev_csv(const BevGrid& bev, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("save_bev_csv: cannot open " + path);
  }
  out << "row,col,channel,value\n";
  char buf[64];
  for (int iy = 0; iy < bev.spec.ny(); ++iy) {
    for (int ix = 0; ix < bev.spec.nx(); ++ix) {
      for (int c = 0; c < bev.channels; ++c) {
        const float v = bev.at(iy, ix, c);
        if (v != 0.0f) {
          std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.9g\n", iy, ix, c, static_cast<double>(v));
          out << buf;
        }
      }
    }
  }
  if (!out) {
    throw DataError("save_bev_csv: write failed for " + path);
  }
}

void save_bev_heatmap(const BevGrid& bev, const std::string& path) {
  const int nx = bev.spec.nx();
  const int ny = bev.spec.ny();
  std::vector<double> intensity(static_cast<std::size_t>(nx) * ny, 0.0);
  double max_v = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      double s = 0.0;
      for (int c = 0; c < bev.channels; ++c) {
        s += bev.at(iy, ix, c);
      }
      intensity[static_cast<std::size_t>(iy) * nx + ix] = s;
      max_v = std::max(max_v, s);
    }
  }
  std::vector<std::uint8_t> gray(intensity.size(), 0);
  if (max_v > 0.0) {
    for (std::size_t i = 0; i < intensity.size(); ++i) {
      const double g = std::clamp(intensity[i] / max_v, 0.0, 1.0);
      gray[i] = static_cast<std::uint8_t>(std::nearbyint(g * 255.0));
    }
  }
  write_pgm(gray, nx, ny, path);
}

double bev_total(const BevGrid& bev) {
  double total = 0.0;
  for (float v : bev.data) {
    total += v;
  }
  return total;
}

}  // namespace fsv
