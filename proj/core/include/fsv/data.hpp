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
#include <map>
#include <string>
#include <vector>

#include "fsv/boxes.hpp"
#include "fsv/geometry.hpp"
#include "fsv/image.hpp"

namespace fsv {

/// Calibrated sensor rig: cameras with unique ids plus a layout tag.
struct RigCalibration {
  std::string layout;
  std::vector<CameraModel> cameras;

  void validate() const;
  const CameraModel& find(const std::string& id) const;
  bool has_lens(LensType lens) const;
};

struct FrameRecord {
  std::string id;
  std::int64_t timestamp_us = 0;
  Mat4 ego_pose = Mat4::identity();
  std::map<std::string, std::string> images;  // camera id -> path relative to manifest root
  std::vector<Box3D> annotations;
};

struct SceneRecord {
  std::string id;
  std::vector<FrameRecord> frames;
};

struct DatasetManifest {
  std::string calibration;  // path relative to manifest root
  std::vector<SceneRecord> scenes;

  void validate() const;  // strictly increasing timestamps, unique frame ids
  std::size_t frame_count() const;
};

struct PredictionsFile {
  std::map<std::string, std::vector<Box3D>> frames;  // frame id -> scored boxes
};

RigCalibration load_calibration(const std::string& path);
void save_calibration(const RigCalibration& rig, const std::string& path);

/// Loaders report schema violations with JSON-pointer-style paths.
DatasetManifest load_manifest(const std::string& path);
/// Canonical key order; save(load(x)) is byte-identical.
void save_manifest(const DatasetManifest& manifest, const std::string& path);

PredictionsFile load_predictions(const std::string& path);
void save_predictions(const PredictionsFile& predictions, const std::string& path);

/// Checks that every camera id referenced by a frame's image map resolves in
/// the rig. Throws DataError naming the first unresolved id.
void validate_images(const DatasetManifest& manifest, const RigCalibration& rig);

/// Frame id -> annotations, for the evaluation pipeline.
std::map<std::string, std::vector<Box3D>> annotations_by_frame(const DatasetManifest& manifest);

/// Default evaluated classes (also the synthetic generator's vocabulary).
const std::vector<std::string>& default_classes();

enum class RigLayout {
  kSurround4F6P,  // 4 fisheye + 6 pinhole
  k4F,
  k6P,
  k2FFrontRear,
  k2FLeftRight,
};

/// Built-in rig presets. `image_scale` scales resolutions and intrinsics
/// together (cheap test rigs keep the same geometry).
RigCalibration make_rig(RigLayout layout, double image_scale = 1.0);
RigLayout parse_rig_layout(const std::string& name);

/// Keeps, per scene, the frames nearest to a fixed-rate grid anchored at the
/// first timestamp. Tie toward the earlier frame.
DatasetManifest subsample(const DatasetManifest& manifest, double hz);

struct SplitResult {
  DatasetManifest train;
  DatasetManifest test;
  std::vector<std::string> warnings;  // degenerate scenes (empty train or test)
};

/// Per-scene temporal prefix/suffix split; train gets floor(fraction * n).
SplitResult split(const DatasetManifest& manifest, double train_fraction);

// --- synthetic scene generation ---------------------------------------------

/// Analytic scene: checkerboard ground plane at z = 0 plus flat-shaded boxes.
struct RenderScene {
  double checker_size = 2.0;                       // meters
  std::array<std::uint8_t, 3> checker_a{200, 200, 200};
  std::array<std::uint8_t, 3> checker_b{60, 60, 60};
  std::array<std::uint8_t, 3> sky{96, 120, 150};
  std::vector<Box3D> boxes;                        // reference frame
  std::vector<std::array<std::uint8_t, 3>> box_colors;  // one per box
};

/// Ray-casts the scene through the exact camera model at pixel centers
/// (optionally supersampled). `instance_mask`, when given, receives 0 for
/// background or 1 + box index of the nearest hit (no supersampling).
Image8 render_view(const CameraModel& cam, const RenderScene& scene, int supersample = 1,
                   std::vector<std::uint16_t>* instance_mask = nullptr);

struct SynthOptions {
  std::uint64_t seed = 0;
  int frames = 20;
  int objects = 8;
  double hz = 10.0;
  bool render_images = true;
  int supersample = 1;
  int threads = 1;
};

/// Deterministically generates a scene of textured cuboids on smooth
/// trajectories around a parked ego vehicle, renders every camera, and writes
/// calibration.json, manifest.json and images under `out_dir`.
DatasetManifest synth_scene(const SynthOptions& options, const RigCalibration& rig,
                            const std::string& out_dir);

/// The object boxes of a generated scene at one frame (no rendering, no IO).
std::vector<Box3D> synth_boxes_at(const SynthOptions& options, int frame_index);

}  // namespace fsv
