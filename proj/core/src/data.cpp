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

#include "fsv/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace fsv {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

ordered_json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open " + path);
  }
  ordered_json j = ordered_json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw SchemaError("/", "invalid JSON in " + path);
  }
  return j;
}

void write_file(const ordered_json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot open " + path + " for writing");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw DataError("write failed for " + path);
  }
}

const ordered_json& member(const ordered_json& j, const char* key, const std::string& path) {
  if (!j.is_object()) {
    throw SchemaError(path, "expected an object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(path + "/" + key, "missing required field");
  }
  return *it;
}

double as_double(const ordered_json& j, const std::string& path) {
  if (!j.is_number()) {
    throw SchemaError(path, "expected a number");
  }
  return j.get<double>();
}

std::int64_t as_int64(const ordered_json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw SchemaError(path, "expected an integer");
  }
  return j.get<std::int64_t>();
}

std::string as_string(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) {
    throw SchemaError(path, "expected a string");
  }
  return j.get<std::string>();
}

const ordered_json& as_array(const ordered_json& j, std::size_t size, const std::string& path) {
  if (!j.is_array() || j.size() != size) {
    throw SchemaError(path, "expected an array of length " + std::to_string(size));
  }
  return j;
}

void check_schema_version(const ordered_json& j, const std::string& path) {
  const std::int64_t v = as_int64(member(j, "schema_version", path), path + "/schema_version");
  if (v != kSchemaVersion) {
    throw SchemaError(path + "/schema_version",
                      "unsupported schema version " + std::to_string(v));
  }
}

Mat4 mat4_from_json(const ordered_json& j, const std::string& path) {
  const auto& rows = as_array(j, 4, path);
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    const std::string row_path = path + "/" + std::to_string(r);
    const auto& row = as_array(rows[static_cast<std::size_t>(r)], 4, row_path);
    for (int c = 0; c < 4; ++c) {
      m.at(r, c) = as_double(row[static_cast<std::size_t>(c)],
                             row_path + "/" + std::to_string(c));
    }
  }
  return m;
}

ordered_json mat4_to_json(const Mat4& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back(m.at(r, c));
    }
    rows.push_back(row);
  }
  return rows;
}

Vec3 vec3_from_json(const ordered_json& j, const std::string& path) {
  const auto& a = as_array(j, 3, path);
  return {as_double(a[0], path + "/0"), as_double(a[1], path + "/1"),
          as_double(a[2], path + "/2")};
}

ordered_json vec3_to_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

Box3D box_from_json(const ordered_json& j, const std::string& path, bool expect_score) {
  Box3D box;
  box.center = vec3_from_json(member(j, "center", path), path + "/center");
  box.size = vec3_from_json(member(j, "size", path), path + "/size");
  box.yaw = as_double(member(j, "yaw", path), path + "/yaw");
  box.label = as_string(member(j, "label", path), path + "/label");
  if (j.contains("track_id")) {
    box.track_id = as_string(j["track_id"], path + "/track_id");
  }
  const bool has_score = j.contains("score");
  if (expect_score && !has_score) {
    throw SchemaError(path + "/score", "prediction box without a score");
  }
  if (!expect_score && has_score) {
    throw SchemaError(path + "/score", "ground-truth box must not carry a score");
  }
  if (has_score) {
    box.score = as_double(j["score"], path + "/score");
  }
  try {
    box.validate_and_wrap();
  } catch (const DataError& e) {
    throw SchemaError(path, e.what());
  }
  return box;
}

ordered_json box_to_json(const Box3D& box) {
  ordered_json j;
  j["center"] = vec3_to_json(box.center);
  j["size"] = vec3_to_json(box.size);
  j["yaw"] = box.yaw;
  j["label"] = box.label;
  if (!box.track_id.empty()) {
    j["track_id"] = box.track_id;
  }
  if (box.score) {
    j["score"] = *box.score;
  }
  return j;
}

CameraModel camera_from_json(const ordered_json& j, const std::string& path) {
  const std::string id = as_string(member(j, "id", path), path + "/id");
  const std::string lens = as_string(member(j, "lens", path), path + "/lens");
  const int width = static_cast<int>(as_int64(member(j, "width", path), path + "/width"));
  const int height = static_cast<int>(as_int64(member(j, "height", path), path + "/height"));
  Extrinsics ext;
  try {
    ext = Extrinsics(mat4_from_json(member(j, "cam_to_ref", path), path + "/cam_to_ref"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + "/cam_to_ref", e.what());
  }
  const ordered_json& intr = member(j, "intrinsics", path);
  const std::string ipath = path + "/intrinsics";
  try {
    if (lens == "pinhole") {
      PinholeIntrinsics pin(as_double(member(intr, "fx", ipath), ipath + "/fx"),
                            as_double(member(intr, "fy", ipath), ipath + "/fy"),
                            as_double(member(intr, "cx", ipath), ipath + "/cx"),
                            as_double(member(intr, "cy", ipath), ipath + "/cy"));
      return CameraModel(id, pin, ext, width, height);
    }
    if (lens == "fisheye") {
      const auto& karr = as_array(member(intr, "k", ipath), 5, ipath + "/k");
      std::array<double, 5> k{};
      for (std::size_t i = 0; i < 5; ++i) {
        k[i] = as_double(karr[i], ipath + "/k/" + std::to_string(i));
      }
      FisheyeIntrinsics fish(k, as_double(member(intr, "cx", ipath), ipath + "/cx"),
                             as_double(member(intr, "cy", ipath), ipath + "/cy"),
                             as_double(member(intr, "fov_rad", ipath), ipath + "/fov_rad"));
      return CameraModel(id, fish, ext, width, height);
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(ipath, e.what());
  }
  throw SchemaError(path + "/lens", "unknown lens type '" + lens + "'");
}

ordered_json camera_to_json(const CameraModel& cam) {
  ordered_json j;
  j["id"] = cam.id;
  j["lens"] = cam.lens == LensType::kFisheye ? "fisheye" : "pinhole";
  j["width"] = cam.width;
  j["height"] = cam.height;
  ordered_json intr;
  if (cam.lens == LensType::kFisheye) {
    const FisheyeIntrinsics& f = cam.fisheye();
    intr["k"] = ordered_json::array({f.k[0], f.k[1], f.k[2], f.k[3], f.k[4]});
    intr["cx"] = f.cx;
    intr["cy"] = f.cy;
    intr["fov_rad"] = f.fov;
  } else {
    const PinholeIntrinsics& p = cam.pinhole();
    intr["fx"] = p.fx;
    intr["fy"] = p.fy;
    intr["cx"] = p.cx;
    intr["cy"] = p.cy;
  }
  j["intrinsics"] = intr;
  j["cam_to_ref"] = mat4_to_json(cam.extrinsics.cam_to_ref);
  return j;
}

const std::map<std::string, std::pair<int, int>>& known_layouts() {
  // tag -> (fisheye count, pinhole count)
  static const std::map<std::string, std::pair<int, int>> layouts = {
      {"4F+6P", {4, 6}}, {"4F", {4, 0}}, {"6P", {0, 6}},
      {"2F-front-rear", {2, 0}}, {"2F-left-right", {2, 0}},
  };
  return layouts;
}

}  // namespace

void RigCalibration::validate() const {
  if (cameras.empty()) {
    throw DataError("RigCalibration: no cameras");
  }
  std::set<std::string> ids;
  int n_fisheye = 0, n_pinhole = 0;
  for (const CameraModel& cam : cameras) {
    if (!ids.insert(cam.id).second) {
      throw DataError("RigCalibration: duplicate camera id '" + cam.id + "'");
    }
    (cam.lens == LensType::kFisheye ? n_fisheye : n_pinhole) += 1;
  }
  const auto it = known_layouts().find(layout);
  if (it != known_layouts().end() &&
      (it->second.first != n_fisheye || it->second.second != n_pinhole)) {
    throw DataError("RigCalibration: layout tag '" + layout +
                    "' does not match the camera list");
  }
}

const CameraModel& RigCalibration::find(const std::string& id) const {
  for (const CameraModel& cam : cameras) {
    if (cam.id == id) {
      return cam;
    }
  }
  throw DataError("RigCalibration: no camera with id '" + id + "'");
}

bool RigCalibration::has_lens(LensType lens) const {
  return std::any_of(cameras.begin(), cameras.end(),
                     [lens](const CameraModel& c) { return c.lens == lens; });
}

RigCalibration load_calibration(const std::string& path) {
  const ordered_json j = parse_file(path);
  check_schema_version(j, "");
  RigCalibration rig;
  rig.layout = as_string(member(j, "layout", ""), "/layout");
  const ordered_json& cams = member(j, "cameras", "");
  if (!cams.is_array() || cams.empty()) {
    throw SchemaError("/cameras", "expected a non-empty array");
  }
  for (std::size_t i = 0; i < cams.size(); ++i) {
    rig.cameras.push_back(camera_from_json(cams[i], "/cameras/" + std::to_string(i)));
  }
  rig.validate();
  return rig;
}

void save_calibration(const RigCalibration& rig, const std::string& path) {
  rig.validate();
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["layout"] = rig.layout;
  ordered_json cams = ordered_json::array();
  for (const CameraModel& cam : rig.cameras) {
    cams.push_back(camera_to_json(cam));
  }
  j["cameras"] = cams;
  write_file(j, path);
}

void DatasetManifest::validate() const {
  std::set<std::string> frame_ids;
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const SceneRecord& scene = scenes[s];
    std::int64_t prev_ts = 0;
    for (std::size_t f = 0; f < scene.frames.size(); ++f) {
      const FrameRecord& frame = scene.frames[f];
      if (f > 0 && frame.timestamp_us <= prev_ts) {
        throw SchemaError("/scenes/" + std::to_string(s) + "/frames/" + std::to_string(f) +
                              "/timestamp_us",
                          "timestamps not strictly increasing at frame '" + frame.id + "'");
      }
      prev_ts = frame.timestamp_us;
      if (!frame_ids.insert(frame.id).second) {
        throw SchemaError("/scenes/" + std::to_string(s) + "/frames/" + std::to_string(f) + "/id",
                          "duplicate frame id '" + frame.id + "'");
      }
      for (const auto& [cam_id, image_path] : frame.images) {
        if (image_path.empty() || image_path.front() == '/') {
          throw SchemaError("/scenes/" + std::to_string(s) + "/frames/" + std::to_string(f) +
                                "/images/" + cam_id,
                            "image path must be relative to the manifest root");
        }
      }
    }
  }
}

std::size_t DatasetManifest::frame_count() const {
  std::size_t n = 0;
  for (const SceneRecord& scene : scenes) {
    n += scene.frames.size();
  }
  return n;
}

DatasetManifest load_manifest(const std::string& path) {
  const ordered_json j = parse_file(path);
  check_schema_version(j, "");
  DatasetManifest m;
  m.calibration = as_string(member(j, "calibration", ""), "/calibration");
  const ordered_json& scenes = member(j, "scenes", "");
  if (!scenes.is_array()) {
    throw SchemaError("/scenes", "expected an array");
  }
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const std::string spath = "/scenes/" + std::to_string(s);
    SceneRecord scene;
    scene.id = as_string(member(scenes[s], "id", spath), spath + "/id");
    const ordered_json& frames = member(scenes[s], "frames", spath);
    if (!frames.is_array()) {
      throw SchemaError(spath + "/frames", "expected an array");
    }
    for (std::size_t f = 0; f < frames.size(); ++f) {
      const std::string fpath = spath + "/frames/" + std::to_string(f);
      const ordered_json& jf = frames[f];
      FrameRecord frame;
      frame.id = as_string(member(jf, "id", fpath), fpath + "/id");
      frame.timestamp_us = as_int64(member(jf, "timestamp_us", fpath), fpath + "/timestamp_us");
      frame.ego_pose = mat4_from_json(member(jf, "ego_pose", fpath), fpath + "/ego_pose");
      const ordered_json& images = member(jf, "images", fpath);
      if (!images.is_object()) {
        throw SchemaError(fpath + "/images", "expected an object");
      }
      for (const auto& [cam_id, image_path] : images.items()) {
        frame.images[cam_id] = as_string(image_path, fpath + "/images/" + cam_id);
      }
      const ordered_json& anns = member(jf, "annotations", fpath);
      if (!anns.is_array()) {
        throw SchemaError(fpath + "/annotations", "expected an array");
      }
      for (std::size_t a = 0; a < anns.size(); ++a) {
        Box3D box = box_from_json(anns[a], fpath + "/annotations/" + std::to_string(a),
                                  /*expect_score=*/false);
        box.frame_id = frame.id;
        frame.annotations.push_back(std::move(box));
      }
      scene.frames.push_back(std::move(frame));
    }
    m.scenes.push_back(std::move(scene));
  }
  m.validate();
  return m;
}

void save_manifest(const DatasetManifest& manifest, const std::string& path) {
  manifest.validate();
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["calibration"] = manifest.calibration;
  ordered_json scenes = ordered_json::array();
  for (const SceneRecord& scene : manifest.scenes) {
    ordered_json js;
    js["id"] = scene.id;
    ordered_json frames = ordered_json::array();
    for (const FrameRecord& frame : scene.frames) {
      ordered_json jf;
      jf["id"] = frame.id;
      jf["timestamp_us"] = frame.timestamp_us;
      jf["ego_pose"] = mat4_to_json(frame.ego_pose);
      ordered_json images = ordered_json::object();
      for (const auto& [cam_id, image_path] : frame.images) {
        images[cam_id] = image_path;
      }
      jf["images"] = std::move(images);
      ordered_json anns = ordered_json::array();
      for (const Box3D& box : frame.annotations) {
        anns.push_back(box_to_json(box));
      }
      jf["annotations"] = std::move(anns);
      frames.push_back(std::move(jf));
    }
    js["frames"] = std::move(frames);
    scenes.push_back(std::move(js));
  }
  j["scenes"] = std::move(scenes);
  write_file(j, path);
}

PredictionsFile load_predictions(const std::string& path) {
  const ordered_json j = parse_file(path);
  check_schema_version(j, "");
  PredictionsFile p;
  const ordered_json& frames = member(j, "frames", "");
  if (!frames.is_array()) {
    throw SchemaError("/frames", "expected an array");
  }
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const std::string fpath = "/frames/" + std::to_string(f);
    const std::string id = as_string(member(frames[f], "id", fpath), fpath + "/id");
    if (p.frames.count(id)) {
      throw SchemaError(fpath + "/id", "duplicate frame id '" + id + "'");
    }
    const ordered_json& boxes = member(frames[f], "boxes", fpath);
    if (!boxes.is_array()) {
      throw SchemaError(fpath + "/boxes", "expected an array");
    }
    std::vector<Box3D>& out = p.frames[id];
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      Box3D box = box_from_json(boxes[b], fpath + "/boxes/" + std::to_string(b),
                                /*expect_score=*/true);
      box.frame_id = id;
      out.push_back(std::move(box));
    }
  }
  return p;
}

void save_predictions(const PredictionsFile& predictions, const std::string& path) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json frames = ordered_json::array();
  for (const auto& [id, boxes] : predictions.frames) {
    ordered_json jf;
    jf["id"] = id;
    ordered_json jb = ordered_json::array();
    for (const Box3D& box : boxes) {
      jb.push_back(box_to_json(box));
    }
    jf["boxes"] = std::move(jb);
    frames.push_back(std::move(jf));
  }
  j["frames"] = std::move(frames);
  write_file(j, path);
}

void validate_images(const DatasetManifest& manifest, const RigCalibration& rig) {
  std::set<std::string> ids;
  for (const CameraModel& cam : rig.cameras) {
    ids.insert(cam.id);
  }
  for (const SceneRecord& scene : manifest.scenes) {
    for (const FrameRecord& frame : scene.frames) {
      for (const auto& [cam_id, path] : frame.images) {
        (void)path;
        if (!ids.count(cam_id)) {
          throw DataError("frame '" + frame.id + "' references camera '" + cam_id +
                          "' which is not in the calibration");
        }
      }
    }
  }
}

std::map<std::string, std::vector<Box3D>> annotations_by_frame(const DatasetManifest& manifest) {
  std::map<std::string, std::vector<Box3D>> out;
  for (const SceneRecord& scene : manifest.scenes) {
    for (const FrameRecord& frame : scene.frames) {
      out[frame.id] = frame.annotations;
    }
  }
  return out;
}

const std::vector<std::string>& default_classes() {
  static const std::vector<std::string> classes = {"bus",        "car",     "cyclist",
                                                   "pedestrian", "truck",   "van"};
  return classes;
}

namespace {

CameraModel make_fisheye(const std::string& id, const Vec3& pos, double yaw, double scale) {
  const std::array<double, 5> k = {209.0 * scale, -0.45 * scale, 0.002 * scale, 0.0, 0.0};
  const double size = 800.0 * scale;
  FisheyeIntrinsics intr(k, size / 2.0, size / 2.0, deg2rad(220.0));
  return CameraModel(id, intr, look_extrinsics(pos, yaw), static_cast<int>(size),
                     static_cast<int>(size));
}

CameraModel make_pinhole(const std::string& id, const Vec3& pos, double yaw, double scale) {
  PinholeIntrinsics intr(640.0 * scale, 640.0 * scale, 640.0 * scale, 360.0 * scale);
  return CameraModel(id, intr, look_extrinsics(pos, yaw), static_cast<int>(1280 * scale),
                     static_cast<int>(720 * scale));
}

}  // namespace

RigCalibration make_rig(RigLayout layout, double image_scale) {
  if (!(image_scale > 0.0)) {
    throw std::invalid_argument("make_rig: image_scale must be positive");
  }
  const CameraModel f_front = make_fisheye("fisheye_front", {2.2, 0.0, 0.7}, 0.0, image_scale);
  const CameraModel f_left = make_fisheye("fisheye_left", {1.2, 0.9, 1.0}, kPi / 2, image_scale);
  const CameraModel f_rear = make_fisheye("fisheye_rear", {-2.2, 0.0, 0.8}, kPi, image_scale);
  const CameraModel f_right =
      make_fisheye("fisheye_right", {1.2, -0.9, 1.0}, -kPi / 2, image_scale);

  const CameraModel p_front = make_pinhole("pinhole_front", {1.7, 0.0, 1.5}, 0.0, image_scale);
  const CameraModel p_front_left =
      make_pinhole("pinhole_front_left", {1.6, 0.5, 1.5}, deg2rad(55.0), image_scale);
  const CameraModel p_front_right =
      make_pinhole("pinhole_front_right", {1.6, -0.5, 1.5}, deg2rad(-55.0), image_scale);
  const CameraModel p_back = make_pinhole("pinhole_back", {-1.8, 0.0, 1.5}, kPi, image_scale);
  const CameraModel p_back_left =
      make_pinhole("pinhole_back_left", {1.0, 0.5, 1.5}, deg2rad(110.0), image_scale);
  const CameraModel p_back_right =
      make_pinhole("pinhole_back_right", {1.0, -0.5, 1.5}, deg2rad(-110.0), image_scale);

  RigCalibration rig;
  switch (layout) {
    case RigLayout::kSurround4F6P:
      rig.layout = "4F+6P";
      rig.cameras = {f_front,      f_left,        f_rear,  f_right,      p_front,
                     p_front_left, p_front_right, p_back,  p_back_left,  p_back_right};
      break;
    case RigLayout::k4F:
      rig.layout = "4F";
      rig.cameras = {f_front, f_left, f_rear, f_right};
      break;
    case RigLayout::k6P:
      rig.layout = "6P";
      rig.cameras = {p_front, p_front_left, p_front_right, p_back, p_back_left, p_back_right};
      break;
    case RigLayout::k2FFrontRear:
      rig.layout = "2F-front-rear";
      rig.cameras = {f_front, f_rear};
      break;
    case RigLayout::k2FLeftRight:
      rig.layout = "2F-left-right";
      rig.cameras = {f_left, f_right};
      break;
  }
  rig.validate();
  return rig;
}

RigLayout parse_rig_layout(const std::string& name) {
  if (name == "4f6p" || name == "4F+6P") return RigLayout::kSurround4F6P;
  if (name == "4f" || name == "4F") return RigLayout::k4F;
  if (name == "6p" || name == "6P") return RigLayout::k6P;
  if (name == "2f-front-rear" || name == "2F-front-rear") return RigLayout::k2FFrontRear;
  if (name == "2f-left-right" || name == "2F-left-right") return RigLayout::k2FLeftRight;
  throw DataError("unknown rig layout '" + name + "'");
}

DatasetManifest subsample(const DatasetManifest& manifest, double hz) {
  if (!(hz > 0.0)) {
    throw std::invalid_argument("subsample: hz must be positive");
  }
  DatasetManifest out;
  out.calibration = manifest.calibration;
  const double period_us = 1e6 / hz;
  for (const SceneRecord& scene : manifest.scenes) {
    SceneRecord kept;
    kept.id = scene.id;
    if (!scene.frames.empty()) {
      const double t0 = static_cast<double>(scene.frames.front().timestamp_us);
      const double t_last = static_cast<double>(scene.frames.back().timestamp_us);
      std::size_t prev_pick = scene.frames.size();  // sentinel
      for (int k = 0;; ++k) {
        const double target = t0 + k * period_us;
        if (target > t_last + 0.5) {  // grid stays within the recording
          break;
        }
        std::size_t best = 0;
        double best_err = std::abs(static_cast<double>(scene.frames[0].timestamp_us) - target);
        for (std::size_t i = 1; i < scene.frames.size(); ++i) {
          const double err = std::abs(static_cast<double>(scene.frames[i].timestamp_us) - target);
          if (err < best_err) {  // strict: ties keep the earlier frame
            best_err = err;
            best = i;
          }
        }
        if (best != prev_pick) {
          kept.frames.push_back(scene.frames[best]);
          prev_pick = best;
        }
      }
    }
    out.scenes.push_back(std::move(kept));
  }
  out.validate();
  return out;
}

SplitResult split(const DatasetManifest& manifest, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("split: train fraction must be in (0, 1)");
  }
  SplitResult result;
  result.train.calibration = manifest.calibration;
  result.test.calibration = manifest.calibration;
  for (const SceneRecord& scene : manifest.scenes) {
    const std::size_t n = scene.frames.size();
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 1e-9));
    SceneRecord train_scene{scene.id, {scene.frames.begin(),
                                       scene.frames.begin() + static_cast<std::ptrdiff_t>(n_train)}};
    SceneRecord test_scene{scene.id, {scene.frames.begin() + static_cast<std::ptrdiff_t>(n_train),
                                      scene.frames.end()}};
    if (train_scene.frames.empty()) {
      result.warnings.push_back("scene '" + scene.id + "': empty train split");
    }
    if (test_scene.frames.empty()) {
      result.warnings.push_back("scene '" + scene.id + "': empty test split");
    }
    result.train.scenes.push_back(std::move(train_scene));
    result.test.scenes.push_back(std::move(test_scene));
  }
  return result;
}

}  // namespace fsv
