#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "fsv/analysis.hpp"
#include "fsv/data.hpp"
#include "fsv/warp.hpp"
#include "test_util.hpp"

using namespace fsv;
using fsv::test::Rng;
using fsv::test::TempDir;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

const char* kMinimalManifest = R"({
  "schema_version": 1,
  "calibration": "calibration.json",
  "scenes": [
    {
      "id": "scene_0000",
      "frames": [
        {
          "id": "scene_0000/000000",
          "timestamp_us": 0,
          "ego_pose": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
          "images": {},
          "annotations": [
            {"center": [10.0, 0.0, 0.75], "size": [4.5, 1.9, 1.5], "yaw": 0.0,
             "label": "car", "track_id": "obj_000"}
          ]
        }
      ]
    }
  ]
})";

DatasetManifest two_scene_manifest(int frames_per_scene, std::int64_t period_us = 100000) {
  DatasetManifest m;
  m.calibration = "calibration.json";
  for (int s = 0; s < 2; ++s) {
    SceneRecord scene;
    scene.id = "scene_" + std::to_string(s);
    for (int f = 0; f < frames_per_scene; ++f) {
      FrameRecord frame;
      frame.id = scene.id + "/" + std::to_string(f);
      frame.timestamp_us = f * period_us;
      scene.frames.push_back(frame);
    }
    m.scenes.push_back(scene);
  }
  return m;
}

}  // namespace

TEST_SUITE_BEGIN("data");

TEST_CASE("minimal manifest loads") {
  TempDir dir("manifest");
  spit(dir.str("manifest.json"), kMinimalManifest);
  const DatasetManifest m = load_manifest(dir.str("manifest.json"));
  REQUIRE(m.scenes.size() == 1);
  REQUIRE(m.scenes[0].frames.size() == 1);
  const FrameRecord& frame = m.scenes[0].frames[0];
  CHECK(frame.id == "scene_0000/000000");
  REQUIRE(frame.annotations.size() == 1);
  CHECK(frame.annotations[0].label == "car");
  CHECK(frame.annotations[0].frame_id == frame.id);
  CHECK(!frame.annotations[0].score.has_value());
}

TEST_CASE("manifest schema violations are reported with paths") {
  TempDir dir("schema");
  SUBCASE("out-of-order timestamps name the offending frame") {
    std::string text = kMinimalManifest;
    const std::string needle = "\"frames\": [";
    const std::string frame2 = R"(
        {
          "id": "scene_0000/000001",
          "timestamp_us": -5,
          "ego_pose": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
          "images": {},
          "annotations": []
        },)";
    // Insert a later frame with an earlier timestamp after the first one.
    std::string broken = text;
    const auto pos = broken.find("}\n      ]");
    REQUIRE(pos != std::string::npos);
    broken.insert(pos + 1, "," + frame2.substr(0, frame2.size() - 1));
    spit(dir.str("bad.json"), broken);
    try {
      load_manifest(dir.str("bad.json"));
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("timestamp") != std::string::npos);
      CHECK(std::string(e.what()).find("scene_0000/000001") != std::string::npos);
      CHECK(e.path().find("/scenes/0/frames/1") != std::string::npos);
    }
  }
  SUBCASE("score on a ground-truth annotation is rejected") {
    std::string broken = kMinimalManifest;
    const auto pos = broken.find("\"track_id\": \"obj_000\"");
    REQUIRE(pos != std::string::npos);
    broken.insert(pos, "\"score\": 0.5, ");
    spit(dir.str("scored.json"), broken);
    CHECK_THROWS_AS(load_manifest(dir.str("scored.json")), SchemaError);
  }
  SUBCASE("absolute image paths are rejected") {
    std::string broken = kMinimalManifest;
    const auto pos = broken.find("\"images\": {}");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, std::string("\"images\": {}").size(),
                   "\"images\": {\"cam\": \"/etc/passwd\"}");
    spit(dir.str("abs.json"), broken);
    CHECK_THROWS_AS(load_manifest(dir.str("abs.json")), SchemaError);
  }
  SUBCASE("missing fields carry JSON-pointer paths") {
    spit(dir.str("empty.json"), "{\"schema_version\": 1}");
    try {
      load_manifest(dir.str("empty.json"));
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(e.path() == "/calibration");
    }
  }
}

TEST_CASE("generated manifest round-trips byte-identically") {
  TempDir dir("roundtrip");
  SynthOptions options;
  options.seed = 42;
  options.frames = 6;
  options.objects = 5;
  options.render_images = false;
  const RigCalibration rig = make_rig(RigLayout::kSurround4F6P, 0.25);
  synth_scene(options, rig, dir.str("ds"));
  const std::string first = slurp(dir.str("ds/manifest.json"));
  const DatasetManifest loaded = load_manifest(dir.str("ds/manifest.json"));
  save_manifest(loaded, dir.str("again.json"));
  CHECK(slurp(dir.str("again.json")) == first);

  const RigCalibration rig_loaded = load_calibration(dir.str("ds/calibration.json"));
  save_calibration(rig_loaded, dir.str("calib_again.json"));
  CHECK(slurp(dir.str("calib_again.json")) == slurp(dir.str("ds/calibration.json")));
}

TEST_CASE("synthetic generation is deterministic") {
  TempDir dir("determinism");
  SynthOptions options;
  options.seed = 7;
  options.frames = 2;
  options.objects = 4;
  const RigCalibration rig = make_rig(RigLayout::k2FFrontRear, 0.1);  // 80x80 images
  synth_scene(options, rig, dir.str("a"));
  synth_scene(options, rig, dir.str("b"));
  CHECK(slurp(dir.str("a/manifest.json")) == slurp(dir.str("b/manifest.json")));
  CHECK(slurp(dir.str("a/images/fisheye_front/000001.ppm")) ==
        slurp(dir.str("b/images/fisheye_front/000001.ppm")));

  SynthOptions other = options;
  other.seed = 8;
  synth_scene(other, rig, dir.str("c"));
  CHECK(slurp(dir.str("a/manifest.json")) != slurp(dir.str("c/manifest.json")));
}

TEST_CASE("an object on a camera's optical axis projects to its principal point") {
  const RigCalibration rig = make_rig(RigLayout::kSurround4F6P);
  const CameraModel& cam = rig.find("fisheye_front");
  Box3D box;
  box.center = {2.2 + 12.0, 0.0, 0.7};  // straight ahead of the front fisheye
  box.size = {4.5, 1.9, 1.55};
  box.yaw = 0.0;
  box.label = "car";
  box.validate_and_wrap();
  const Vec3 in_cam = cam.extrinsics.ref_to_cam().transform_point(box.center);
  const Vec2 px = project(in_cam, cam);
  CHECK(px.x == doctest::Approx(400.0).epsilon(1e-9));
  CHECK(px.y == doctest::Approx(400.0).epsilon(1e-9));
  const auto bbox = project_box(box, cam);
  REQUIRE(bbox.has_value());
  CHECK((bbox->u_min + bbox->u_max) / 2 == doctest::Approx(400.0).epsilon(1e-6));
}

TEST_CASE("fisheye render warped to perspective matches a direct perspective render") {
  // Desk-size version of the cross-render contract (the acceptance suite runs
  // it at full resolution).
  const int size = 200;
  const std::array<double, 5> k = {209.0 * 0.25, -0.45 * 0.25, 0.002 * 0.25, 0.0, 0.0};
  // Ground-facing view: every target ray lands on nearby checkerboard, so the
  // comparison is not dominated by horizon aliasing.
  const Extrinsics pose = look_extrinsics({0.0, 0.0, 1.5}, 0.0, deg2rad(-60.0));
  const CameraModel fisheye("f", FisheyeIntrinsics(k, size / 2.0, size / 2.0, deg2rad(220.0)),
                            pose, size, size);
  const double focal = size / 2.0;  // 90 degree horizontal fov
  const CameraModel pinhole("p", PinholeIntrinsics(focal, focal, size / 2.0, size / 2.0), pose,
                            size, size);

  RenderScene scene;  // checkerboard ground only
  scene.checker_size = 6.0;
  const Image8 fisheye_render = render_view(fisheye, scene, 3);
  const Image8 direct = render_view(pinhole, scene, 3);
  const Image8 warped =
      rectify_image(fisheye_render, fisheye, GridSpec::perspective(size, size, focal),
                    SampleMode::kBilinear);

  double abs_error = 0.0;
  std::size_t count = 0;
  for (int i = 2; i < size - 2; ++i) {
    for (int j = 2; j < size - 2; ++j) {
      for (int c = 0; c < 3; ++c) {
        abs_error += std::abs(static_cast<double>(warped.at(i, j, c)) - direct.at(i, j, c));
        ++count;
      }
    }
  }
  const double mae = abs_error / static_cast<double>(count);
  CHECK(mae <= 2.0);
}

TEST_CASE("annotation and render agree on object silhouettes") {
  const RigCalibration rig = make_rig(RigLayout::kSurround4F6P, 0.5);
  RenderScene scene;
  scene.boxes.push_back([] {
    Box3D b;
    b.center = {10.0, 1.0, 0.8};
    b.size = {4.5, 1.9, 1.6};
    b.yaw = 0.3;
    b.label = "car";
    b.validate_and_wrap();
    return b;
  }());
  scene.boxes.push_back([] {
    Box3D b;
    b.center = {-8.0, -3.0, 1.1};
    b.size = {5.0, 2.0, 2.2};
    b.yaw = -1.2;
    b.label = "van";
    b.validate_and_wrap();
    return b;
  }());
  scene.box_colors = {{200, 40, 40}, {40, 200, 40}};

  for (const CameraModel& cam : rig.cameras) {
    std::vector<std::uint16_t> mask;
    render_view(cam, scene, 1, &mask);
    for (std::size_t b = 0; b < scene.boxes.size(); ++b) {
      double u_min = 1e300, v_min = 1e300, u_max = -1e300, v_max = -1e300;
      std::size_t pixels = 0;
      for (int i = 0; i < cam.height; ++i) {
        for (int j = 0; j < cam.width; ++j) {
          if (mask[static_cast<std::size_t>(i) * cam.width + j] == b + 1) {
            ++pixels;
            u_min = std::min(u_min, j + 0.5);
            u_max = std::max(u_max, j + 0.5);
            v_min = std::min(v_min, i + 0.5);
            v_max = std::max(v_max, i + 0.5);
          }
        }
      }
      if (pixels < 30) {
        continue;  // camera barely or never sees this object
      }
      if (u_min < 2.0 || v_min < 2.0 || u_max > cam.width - 2.0 || v_max > cam.height - 2.0) {
        continue;  // clipped at the frame border: the sample bbox cannot cover it
      }
      const auto bbox = project_box(scene.boxes[b], cam);
      REQUIRE(bbox.has_value());
      const double ix_min = std::max(bbox->u_min, u_min);
      const double iy_min = std::max(bbox->v_min, v_min);
      const double ix_max = std::min(bbox->u_max, u_max);
      const double iy_max = std::min(bbox->v_max, v_max);
      const double inter = std::max(0.0, ix_max - ix_min) * std::max(0.0, iy_max - iy_min);
      const double uni =
          bbox->area() + (u_max - u_min) * (v_max - v_min) - inter;
      REQUIRE(uni > 0.0);
      CHECK(inter / uni >= 0.7);
    }
  }
}

TEST_CASE("subsample") {
  SUBCASE("10 Hz to 2 Hz keeps every 5th frame") {
    const DatasetManifest m = two_scene_manifest(10);
    const DatasetManifest sub = subsample(m, 2.0);
    for (const SceneRecord& scene : sub.scenes) {
      REQUIRE(scene.frames.size() == 2);
      CHECK(scene.frames[0].timestamp_us == 0);
      CHECK(scene.frames[1].timestamp_us == 500000);
    }
  }
  SUBCASE("native rate is the identity") {
    const DatasetManifest m = two_scene_manifest(7);
    const DatasetManifest sub = subsample(m, 10.0);
    CHECK(sub.frame_count() == m.frame_count());
  }
  SUBCASE("irregular timestamps pick the nearest frame") {
    DatasetManifest m;
    m.calibration = "c.json";
    SceneRecord scene;
    scene.id = "s";
    const std::int64_t stamps[] = {0, 90000, 160000, 420000, 500000, 1040000};
    for (std::size_t i = 0; i < 6; ++i) {
      FrameRecord f;
      f.id = "s/" + std::to_string(i);
      f.timestamp_us = stamps[i];
      scene.frames.push_back(f);
    }
    m.scenes.push_back(scene);
    const DatasetManifest sub = subsample(m, 2.0);  // grid: 0, 500000, 1000000
    REQUIRE(sub.scenes[0].frames.size() == 3);
    CHECK(sub.scenes[0].frames[0].timestamp_us == 0);
    CHECK(sub.scenes[0].frames[1].timestamp_us == 500000);
    CHECK(sub.scenes[0].frames[2].timestamp_us == 1040000);
  }
  SUBCASE("invalid rate") {
    CHECK_THROWS_AS(subsample(two_scene_manifest(3), 0.0), std::invalid_argument);
  }
}

TEST_CASE("split") {
  SUBCASE("70/30 on ten frames") {
    const SplitResult r = split(two_scene_manifest(10), 0.7);
    for (const SceneRecord& scene : r.train.scenes) {
      CHECK(scene.frames.size() == 7);
    }
    for (const SceneRecord& scene : r.test.scenes) {
      CHECK(scene.frames.size() == 3);
    }
    CHECK(r.warnings.empty());
  }
  SUBCASE("single-frame scene flags the empty train split") {
    const SplitResult r = split(two_scene_manifest(1), 0.7);
    CHECK(r.train.scenes[0].frames.empty());
    CHECK(r.test.scenes[0].frames.size() == 1);
    CHECK(r.warnings.size() == 2);  // both scenes degenerate
  }
  SUBCASE("500 frames split 350/150") {
    const SplitResult r = split(two_scene_manifest(500, 1000), 0.7);
    CHECK(r.train.scenes[0].frames.size() == 350);
    CHECK(r.test.scenes[0].frames.size() == 150);
  }
  SUBCASE("disjoint and covering") {
    const DatasetManifest m = two_scene_manifest(13);
    const SplitResult r = split(m, 0.61);
    std::set<std::string> train_ids, test_ids;
    for (const SceneRecord& scene : r.train.scenes) {
      for (const FrameRecord& f : scene.frames) {
        train_ids.insert(f.id);
      }
    }
    for (const SceneRecord& scene : r.test.scenes) {
      for (const FrameRecord& f : scene.frames) {
        test_ids.insert(f.id);
      }
    }
    CHECK(train_ids.size() + test_ids.size() == m.frame_count());
    for (const std::string& id : train_ids) {
      CHECK(test_ids.find(id) == test_ids.end());
    }
  }
  SUBCASE("invalid fraction") {
    CHECK_THROWS_AS(split(two_scene_manifest(4), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(split(two_scene_manifest(4), 1.0), std::invalid_argument);
  }
}

TEST_CASE("predictions round trip and validation") {
  TempDir dir("preds");
  PredictionsFile preds;
  Box3D b;
  b.center = {4, 5, 0.8};
  b.size = {4.5, 1.9, 1.55};
  b.yaw = 0.2;
  b.label = "car";
  b.score = 0.75;
  b.validate_and_wrap();
  preds.frames["scene_0000/000000"] = {b};
  save_predictions(preds, dir.str("preds.json"));
  const PredictionsFile loaded = load_predictions(dir.str("preds.json"));
  REQUIRE(loaded.frames.size() == 1);
  CHECK(*loaded.frames.at("scene_0000/000000")[0].score == doctest::Approx(0.75));

  // A prediction without a score is a schema violation.
  std::string text = slurp(dir.str("preds.json"));
  const auto pos = text.find(",\n          \"score\": 0.75");
  REQUIRE(pos != std::string::npos);
  text.erase(pos, std::string(",\n          \"score\": 0.75").size());
  spit(dir.str("noscore.json"), text);
  CHECK_THROWS_AS(load_predictions(dir.str("noscore.json")), SchemaError);
}

TEST_CASE("image references must resolve against the calibration") {
  const RigCalibration rig = make_rig(RigLayout::k2FFrontRear);
  DatasetManifest m = two_scene_manifest(1);
  m.scenes[0].frames[0].images["fisheye_front"] = "images/fisheye_front/0.ppm";
  validate_images(m, rig);  // resolves
  m.scenes[0].frames[0].images["fisheye_left"] = "images/fisheye_left/0.ppm";
  CHECK_THROWS_AS(validate_images(m, rig), DataError);
}

TEST_CASE("rig layouts validate their camera sets") {
  for (RigLayout layout : {RigLayout::kSurround4F6P, RigLayout::k4F, RigLayout::k6P,
                           RigLayout::k2FFrontRear, RigLayout::k2FLeftRight}) {
    const RigCalibration rig = make_rig(layout);
    rig.validate();
  }
  RigCalibration broken = make_rig(RigLayout::k4F);
  broken.layout = "6P";
  CHECK_THROWS_AS(broken.validate(), DataError);
  CHECK(parse_rig_layout("4f6p") == RigLayout::kSurround4F6P);
  CHECK_THROWS_AS(parse_rig_layout("9X"), DataError);
}

TEST_SUITE_END();
