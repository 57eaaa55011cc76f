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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iterator>
#include <limits>
#include <random>

#include "fsv/data.hpp"
#include "fsv/parallel.hpp"

namespace fsv {

namespace {

// Deterministic helpers on top of mt19937_64; the standard distributions are
// implementation-defined, these are not.
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int uniform_int(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
  bool coin() { return (gen() & 1u) != 0; }
};

struct ObjectTraits {
  const char* label;
  Vec3 size;  // length, width, height
};

constexpr ObjectTraits kTraits[] = {
    {"bus", {11.0, 2.9, 3.3}},      {"car", {4.5, 1.9, 1.55}}, {"cyclist", {1.8, 0.6, 1.7}},
    {"pedestrian", {0.6, 0.6, 1.75}}, {"truck", {7.5, 2.5, 3.2}}, {"van", {5.0, 2.0, 2.2}},
};

struct TrackSpec {
  std::string label;
  Vec3 size;
  std::array<std::uint8_t, 3> color;
  bool circular = false;
  // circular: orbit of radius `radius`, phase `a0`, angular velocity `omega`
  // linear: start `p0`, heading `a0`, speed `speed`
  double radius = 0.0;
  double a0 = 0.0;
  double omega = 0.0;
  Vec3 p0;
  double speed = 0.0;
};

std::vector<TrackSpec> make_tracks(const SynthOptions& options) {
  Rng rng(options.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  std::vector<TrackSpec> tracks;
  const int n_traits = static_cast<int>(std::size(kTraits));
  for (int i = 0; i < options.objects; ++i) {
    const ObjectTraits& traits = kTraits[rng.uniform_int(n_traits)];
    TrackSpec t;
    t.label = traits.label;
    const double size_jitter = rng.uniform(0.9, 1.1);
    t.size = size_jitter * traits.size;
    t.color = {static_cast<std::uint8_t>(60 + rng.uniform_int(180)),
               static_cast<std::uint8_t>(60 + rng.uniform_int(180)),
               static_cast<std::uint8_t>(60 + rng.uniform_int(180))};
    t.circular = rng.coin();
    if (t.circular) {
      t.radius = rng.uniform(6.0, 40.0);
      t.a0 = rng.uniform(-kPi, kPi);
      const double speed = rng.uniform(1.0, 8.0);
      t.omega = (rng.coin() ? 1.0 : -1.0) * speed / t.radius;
    } else {
      t.p0 = {rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0), 0.0};
      t.a0 = rng.uniform(-kPi, kPi);
      t.speed = rng.uniform(1.0, 10.0);
    }
    tracks.push_back(std::move(t));
  }
  return tracks;
}

Box3D track_box_at(const TrackSpec& track, int index, double t) {
  Box3D box;
  box.size = track.size;
  box.label = track.label;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "obj_%03d", index);
  box.track_id = buf;
  if (track.circular) {
    const double a = track.a0 + track.omega * t;
    box.center = {track.radius * std::cos(a), track.radius * std::sin(a), track.size.z / 2.0};
    box.yaw = a + (track.omega >= 0.0 ? kPi / 2.0 : -kPi / 2.0);
  } else {
    box.center = {track.p0.x + track.speed * t * std::cos(track.a0),
                  track.p0.y + track.speed * t * std::sin(track.a0), track.size.z / 2.0};
    box.yaw = track.a0;
  }
  box.validate_and_wrap();
  return box;
}

struct RayHit {
  double t = std::numeric_limits<double>::infinity();
  int box_index = -1;  // -1 ground, -2 none
  int face_axis = 0;
};

// Slab test against the yaw-rotated box.
bool intersect_box(const Vec3& origin, const Vec3& dir, const Box3D& box, double* t_hit,
                   int* face_axis) {
  const double c = std::cos(box.yaw), s = std::sin(box.yaw);
  const Vec3 rel = origin - box.center;
  const Vec3 o{c * rel.x + s * rel.y, -s * rel.x + c * rel.y, rel.z};
  const Vec3 d{c * dir.x + s * dir.y, -s * dir.x + c * dir.y, dir.z};
  const double half[3] = {box.size.x / 2.0, box.size.y / 2.0, box.size.z / 2.0};
  const double od[3] = {o.x, o.y, o.z};
  const double dd[3] = {d.x, d.y, d.z};
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int axis = 0;
  for (int a = 0; a < 3; ++a) {
    if (dd[a] == 0.0) {
      if (std::abs(od[a]) > half[a]) {
        return false;
      }
      continue;
    }
    double t0 = (-half[a] - od[a]) / dd[a];
    double t1 = (half[a] - od[a]) / dd[a];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    if (t0 > t_near) {
      t_near = t0;
      axis = a;
    }
    t_far = std::min(t_far, t1);
    if (t_near > t_far) {
      return false;
    }
  }
  if (t_far < 1e-6) {
    return false;
  }
  *t_hit = t_near >= 1e-6 ? t_near : t_far;
  *face_axis = axis;
  return true;
}

RayHit cast_ray(const Vec3& origin, const Vec3& dir, const RenderScene& scene) {
  RayHit hit;
  hit.box_index = -2;
  if (dir.z < 0.0 && origin.z > 0.0) {
    hit.t = -origin.z / dir.z;
    hit.box_index = -1;
  }
  for (std::size_t b = 0; b < scene.boxes.size(); ++b) {
    double t = 0.0;
    int axis = 0;
    if (intersect_box(origin, dir, scene.boxes[b], &t, &axis) && t < hit.t) {
      hit.t = t;
      hit.box_index = static_cast<int>(b);
      hit.face_axis = axis;
    }
  }
  return hit;
}

void shade(const RenderScene& scene, const Vec3& origin, const Vec3& dir, const RayHit& hit,
           double rgb[3]) {
  if (hit.box_index == -2) {
    for (int c = 0; c < 3; ++c) rgb[c] = scene.sky[static_cast<std::size_t>(c)];
    return;
  }
  if (hit.box_index == -1) {
    const Vec3 p = origin + hit.t * dir;
    const long long px = static_cast<long long>(std::floor(p.x / scene.checker_size));
    const long long py = static_cast<long long>(std::floor(p.y / scene.checker_size));
    const auto& tile = ((px + py) & 1) == 0 ? scene.checker_a : scene.checker_b;
    for (int c = 0; c < 3; ++c) rgb[c] = tile[static_cast<std::size_t>(c)];
    return;
  }
  static constexpr double kFaceShade[3] = {0.9, 0.75, 1.0};
  const auto& base = scene.box_colors[static_cast<std::size_t>(hit.box_index)];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = kFaceShade[hit.face_axis] * base[static_cast<std::size_t>(c)];
  }
}

}  // namespace

Image8 render_view(const CameraModel& cam, const RenderScene& scene, int supersample,
                   std::vector<std::uint16_t>* instance_mask) {
  if (supersample < 1) {
    throw std::invalid_argument("render_view: supersample must be >= 1");
  }
  if (scene.boxes.size() != scene.box_colors.size()) {
    throw DimensionMismatch("render_view: boxes and box_colors differ in size");
  }
  Image8 image(cam.width, cam.height);
  if (instance_mask) {
    instance_mask->assign(static_cast<std::size_t>(cam.width) * cam.height, 0);
  }
  const Mat4& cam_to_ref = cam.extrinsics.cam_to_ref;
  const Vec3 origin = cam_to_ref.translation();
  const int ss = supersample;
  for (int i = 0; i < cam.height; ++i) {
    for (int j = 0; j < cam.width; ++j) {
      double acc[3] = {0.0, 0.0, 0.0};
      int taken = 0;
      for (int a = 0; a < ss; ++a) {
        for (int b = 0; b < ss; ++b) {
          const double u = j + (b + 0.5) / ss;
          const double v = i + (a + 0.5) / ss;
          Vec3 ray_cam;
          try {
            ray_cam = unproject(Vec2{u, v}, cam);
          } catch (const OutOfFieldOfView&) {
            continue;  // outside the image circle: stays black
          }
          const Vec3 dir = cam_to_ref.rotate(ray_cam);
          const RayHit hit = cast_ray(origin, dir, scene);
          double rgb[3];
          shade(scene, origin, dir, hit, rgb);
          for (int c = 0; c < 3; ++c) acc[c] += rgb[c];
          ++taken;
        }
      }
      if (taken > 0) {
        for (int c = 0; c < 3; ++c) {
          image.at(i, j, c) =
              static_cast<std::uint8_t>(std::clamp(std::nearbyint(acc[c] / taken), 0.0, 255.0));
        }
      }
      if (instance_mask) {
        try {
          const Vec3 ray_cam = unproject(Vec2{j + 0.5, i + 0.5}, cam);
          const Vec3 dir = cam_to_ref.rotate(ray_cam);
          const RayHit hit = cast_ray(origin, dir, scene);
          if (hit.box_index >= 0) {
            (*instance_mask)[static_cast<std::size_t>(i) * cam.width + j] =
                static_cast<std::uint16_t>(hit.box_index + 1);
          }
        } catch (const OutOfFieldOfView&) {
        }
      }
    }
  }
  return image;
}

std::vector<Box3D> synth_boxes_at(const SynthOptions& options, int frame_index) {
  const std::vector<TrackSpec> tracks = make_tracks(options);
  const double t = frame_index / options.hz;
  std::vector<Box3D> boxes;
  boxes.reserve(tracks.size());
  for (std::size_t k = 0; k < tracks.size(); ++k) {
    boxes.push_back(track_box_at(tracks[k], static_cast<int>(k), t));
  }
  return boxes;
}

DatasetManifest synth_scene(const SynthOptions& options, const RigCalibration& rig,
                            const std::string& out_dir) {
  if (options.frames < 1 || options.objects < 0 || !(options.hz > 0.0)) {
    throw std::invalid_argument("synth_scene: bad frame/object counts or rate");
  }
  rig.validate();
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const std::vector<TrackSpec> tracks = make_tracks(options);
  const std::string scene_id = "scene_0000";

  DatasetManifest manifest;
  manifest.calibration = "calibration.json";
  SceneRecord scene;
  scene.id = scene_id;

  for (int f = 0; f < options.frames; ++f) {
    const double t = f / options.hz;
    FrameRecord frame;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%06d", f);
    frame.id = scene_id + "/" + buf;
    frame.timestamp_us = std::llround(f * 1e6 / options.hz);
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      Box3D box = track_box_at(tracks[k], static_cast<int>(k), t);
      box.frame_id = frame.id;
      frame.annotations.push_back(std::move(box));
    }
    if (options.render_images) {
      for (const CameraModel& cam : rig.cameras) {
        frame.images[cam.id] = "images/" + cam.id + "/" + buf + ".ppm";
      }
    }
    scene.frames.push_back(std::move(frame));
  }
  manifest.scenes.push_back(std::move(scene));

  if (options.render_images) {
    for (const CameraModel& cam : rig.cameras) {
      fs::create_directories(fs::path(out_dir) / "images" / cam.id);
    }
    // One render job per (frame, camera); disjoint outputs keep the result
    // independent of the thread count.
    const std::size_t n_cams = rig.cameras.size();
    const std::size_t n_jobs = static_cast<std::size_t>(options.frames) * n_cams;
    parallel_for(n_jobs, options.threads, [&](std::size_t job) {
      const int f = static_cast<int>(job / n_cams);
      const CameraModel& cam = rig.cameras[job % n_cams];
      RenderScene rscene;
      const double t = f / options.hz;
      for (std::size_t k = 0; k < tracks.size(); ++k) {
        rscene.boxes.push_back(track_box_at(tracks[k], static_cast<int>(k), t));
        rscene.box_colors.push_back(tracks[k].color);
      }
      const Image8 image = render_view(cam, rscene, options.supersample);
      write_ppm(image, (fs::path(out_dir) /
                        manifest.scenes[0].frames[static_cast<std::size_t>(f)].images.at(cam.id))
                           .string());
    });
  }

  save_calibration(rig, (fs::path(out_dir) / "calibration.json").string());
  save_manifest(manifest, (fs::path(out_dir) / "manifest.json").string());
  return manifest;
}

}  // namespace fsv
