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

// fsv: batch CLI over the core library. Exit codes: 0 ok, 2 usage error,
// 3 data error, 4 numerical failure. Diagnostics go to stderr; artifacts only
// to the --out paths. All randomness flows from --seed and outputs are
// byte-identical across reruns, independent of --threads.

#include <clocale>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsv/analysis.hpp"
#include "fsv/data.hpp"
#include "fsv/evaluation.hpp"
#include "fsv/frustum.hpp"
#include "fsv/geometry.hpp"
#include "fsv/image.hpp"
#include "fsv/parallel.hpp"
#include "fsv/warp.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

std::string sanitize_id(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (c == '/' || c == '\\' || c == ':') {
      c = '_';
    }
  }
  return out;
}

fsv::RigCalibration load_rig_for_manifest(const std::string& manifest_path,
                                          const fsv::DatasetManifest& manifest,
                                          const std::string& calib_override) {
  if (!calib_override.empty()) {
    return fsv::load_calibration(calib_override);
  }
  const fs::path root = fs::path(manifest_path).parent_path();
  return fsv::load_calibration((root / manifest.calibration).string());
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    values.push_back(std::stod(token));
  }
  return values;
}

// --- rectify -----------------------------------------------------------------

struct RectifyArgs {
  std::string input;
  std::string calib;
  std::string camera;
  std::string mode = "equirect";
  std::string out;
  std::string save_grid_path;
  std::string interp = "bilinear";
  int width = 0;
  int height = 0;
  double focal = 0.0;
  double phi_span_deg = 0.0;
  double y_span = 1.7320508075688772;  // tan(60 deg)
  int threads = 1;
};

fsv::GridSpec rectify_spec(const RectifyArgs& args, const fsv::CameraModel& cam) {
  const int width = args.width > 0 ? args.width : cam.width;
  const int height = args.height > 0 ? args.height : cam.height;
  const double fov = cam.lens == fsv::LensType::kFisheye
                         ? cam.fisheye().fov
                         : 2.0 * std::atan(cam.width / (2.0 * cam.pinhole().fx));
  if (args.mode == "perspective") {
    const double focal = args.focal > 0.0 ? args.focal : width / 2.0;
    return fsv::GridSpec::perspective(height, width, focal);
  }
  const double phi_span = args.phi_span_deg > 0.0 ? fsv::deg2rad(args.phi_span_deg) : fov;
  if (args.mode == "cylindrical") {
    // The cylindrical parameterization's angular origin is the +z axis, so a
    // patch centered on the optical axis is centered at phi = pi/2.
    return fsv::GridSpec::cylindrical(height, width, fsv::kPi / 2 - phi_span / 2,
                                      fsv::kPi / 2 + phi_span / 2, -args.y_span, args.y_span);
  }
  const double theta_span = std::min(phi_span, fsv::kPi);  // keep rows physical
  return fsv::GridSpec::equirect(height, width, -phi_span / 2, phi_span / 2, -theta_span / 2,
                                 theta_span / 2);
}

int run_rectify(const RectifyArgs& args) {
  const fsv::SampleMode mode =
      args.interp == "nearest" ? fsv::SampleMode::kNearest : fsv::SampleMode::kBilinear;

  if (args.input.size() > 5 && args.input.substr(args.input.size() - 5) == ".json") {
    const fsv::DatasetManifest manifest = fsv::load_manifest(args.input);
    const fsv::RigCalibration rig = load_rig_for_manifest(args.input, manifest, args.calib);
    fsv::validate_images(manifest, rig);
    const fsv::CameraModel& cam = rig.find(args.camera);
    const fsv::GridSpec spec = rectify_spec(args, cam);
    const fsv::SamplingGrid grid = fsv::build_grid(spec, cam);  // one grid, reused per frame
    if (!args.save_grid_path.empty()) {
      fsv::save_grid(grid, args.save_grid_path);
    }
    fs::create_directories(args.out);
    const fs::path root = fs::path(args.input).parent_path();

    struct Job {
      std::string image_path;
      std::string out_path;
    };
    std::vector<Job> jobs;
    for (const fsv::SceneRecord& scene : manifest.scenes) {
      for (const fsv::FrameRecord& frame : scene.frames) {
        const auto it = frame.images.find(args.camera);
        if (it == frame.images.end()) {
          continue;
        }
        jobs.push_back({(root / it->second).string(),
                        (fs::path(args.out) / (sanitize_id(frame.id) + ".ppm")).string()});
      }
    }
    if (jobs.empty()) {
      throw fsv::DataError("rectify: no frames carry an image for camera '" + args.camera + "'");
    }
    fsv::parallel_for(jobs.size(), args.threads, [&](std::size_t i) {
      const fsv::Image8 image = fsv::read_ppm(jobs[i].image_path);
      const fsv::FeatureMap warped =
          fsv::apply_grid(fsv::image_to_feature_map(image), grid, mode);
      fsv::write_ppm(fsv::feature_map_to_image(warped), jobs[i].out_path);
    });
    std::cerr << "fsv: rectified " << jobs.size() << " frame(s) for camera '" << args.camera
              << "'\n";
    return 0;
  }

  // Single-image mode.
  if (args.calib.empty()) {
    throw fsv::DataError("rectify: --calib is required with a raw image input");
  }
  const fsv::RigCalibration rig = fsv::load_calibration(args.calib);
  const fsv::CameraModel& cam = rig.find(args.camera);
  const fsv::GridSpec spec = rectify_spec(args, cam);
  if (!args.save_grid_path.empty()) {
    fsv::save_grid(fsv::build_grid(spec, cam), args.save_grid_path);
  }
  const fsv::Image8 image = fsv::read_ppm(args.input);
  const fsv::Image8 out = fsv::rectify_image(image, cam, spec, mode);
  if (const fs::path parent = fs::path(args.out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  fsv::write_ppm(out, args.out);
  return 0;
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
  std::string gt;
  std::string pred;
  std::string out;
  std::string csv;
  std::string thresholds = "0.5,1,2,4";
  std::string bins;
  std::string classes;
  double tp_threshold = 2.0;
  double max_range = 48.0;
  bool trapezoid = false;
};

int run_eval(const EvalArgs& args) {
  const fsv::DatasetManifest manifest = fsv::load_manifest(args.gt);
  const fsv::PredictionsFile preds = fsv::load_predictions(args.pred);
  const auto gts = fsv::annotations_by_frame(manifest);

  fsv::EvalConfig config;
  config.thresholds = parse_double_list(args.thresholds);
  config.tp_threshold = args.tp_threshold;
  config.max_range = args.max_range;
  config.nuscenes_integration = !args.trapezoid;
  if (!args.bins.empty()) {
    config.distance_bins = parse_double_list(args.bins);
  }
  if (!args.classes.empty()) {
    std::string token;
    std::istringstream in(args.classes);
    while (std::getline(in, token, ',')) {
      config.classes.push_back(token);
    }
  } else {
    std::set<std::string> labels;
    for (const auto& [id, boxes] : gts) {
      for (const fsv::Box3D& b : boxes) {
        labels.insert(b.label);
      }
    }
    config.classes.assign(labels.begin(), labels.end());
  }

  const fsv::MetricsReport report = fsv::evaluate(gts, preds.frames, config);
  if (const fs::path parent = fs::path(args.out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  fsv::save_report(report, args.out);
  if (!args.csv.empty()) {
    fsv::save_report_csv(report, args.csv);
  }
  std::cerr << "fsv: mAP " << report.map << ", FDS " << report.fds_value << " over "
            << report.n_frames << " frame(s)\n";
  for (const std::string& warning : report.warnings) {
    std::cerr << "fsv: warning: " << warning << "\n";
  }
  return 0;
}

// --- synth -------------------------------------------------------------------

struct SynthArgs {
  std::string out;
  std::string rig = "4f6p";
  std::uint64_t seed = 0;
  int frames = 20;
  int objects = 8;
  double hz = 10.0;
  double image_scale = 1.0;
  bool no_images = false;
  int supersample = 1;
  int threads = 1;
};

int run_synth(const SynthArgs& args) {
  const fsv::RigCalibration rig = fsv::make_rig(fsv::parse_rig_layout(args.rig), args.image_scale);
  fsv::SynthOptions options;
  options.seed = args.seed;
  options.frames = args.frames;
  options.objects = args.objects;
  options.hz = args.hz;
  options.render_images = !args.no_images;
  options.supersample = args.supersample;
  options.threads = args.threads;
  const fsv::DatasetManifest manifest = fsv::synth_scene(options, rig, args.out);
  std::cerr << "fsv: wrote " << manifest.frame_count() << " frame(s) to " << args.out << "\n";
  return 0;
}

// --- compression ---------------------------------------------------------------

struct CompressionArgs {
  std::string dataset;
  std::string calib;
  std::string out;
  int per_class_cap = 100;
  double lowess_frac = 0.5;
  int lowess_iters = 3;
  std::uint64_t seed = 0;
  int edge_samples = 1;
  int threads = 1;
};

int run_compression(const CompressionArgs& args) {
  const fsv::DatasetManifest manifest = fsv::load_manifest(args.dataset);
  const fsv::RigCalibration rig = load_rig_for_manifest(args.dataset, manifest, args.calib);
  fsv::validate_images(manifest, rig);
  fsv::CompressionOptions options;
  options.per_class_cap = args.per_class_cap;
  options.seed = args.seed;
  options.edge_samples = args.edge_samples;
  options.threads = args.threads;
  const fsv::CompressionResult result = fsv::compression_samples(manifest, rig, options);
  if (result.samples.size() < 3) {
    throw fsv::DataError("compression: need at least 3 visible samples, got " +
                         std::to_string(result.samples.size()));
  }
  const fsv::CompressionCurves curves =
      fsv::fit_compression_curves(result.samples, args.lowess_frac, args.lowess_iters);
  fs::create_directories(args.out);
  fsv::save_samples_csv(result.samples, (fs::path(args.out) / "samples.csv").string());
  fsv::save_curves_csv(curves, (fs::path(args.out) / "curves.csv").string());
  fsv::save_compression_svg(result.samples, curves, (fs::path(args.out) / "plot.svg").string());
  std::cerr << "fsv: " << result.samples.size() << " sample(s), " << result.skipped
            << " skipped as invisible\n";
  return 0;
}

// --- liftsplat -----------------------------------------------------------------

struct LiftSplatArgs {
  std::string dataset;
  std::string calib;
  std::string out;
  std::string camera_set = "fisheye";
  std::string binning = "uniform:1:68:67";  // spacing:r_min:r_max:count
  std::string bev_size = "48:0.75";         // half extent (m) : cell size (m)
  std::string logits_path;
  int frame = 0;
  int grid_height = 32;
  int grid_width = 64;
  double z_min = -5.0;
  double z_max = 5.0;
  int threads = 1;
};

fsv::DepthBinning parse_binning(const std::string& text) {
  const std::vector<std::string> parts = [&] {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ':')) {
      out.push_back(token);
    }
    return out;
  }();
  if (parts.size() != 4 || (parts[0] != "uniform" && parts[0] != "quadratic")) {
    throw fsv::DataError("liftsplat: --binning must look like uniform:1:68:67");
  }
  fsv::DepthBinning binning;
  binning.spacing =
      parts[0] == "quadratic" ? fsv::DepthSpacing::kQuadratic : fsv::DepthSpacing::kUniform;
  binning.r_min = std::stod(parts[1]);
  binning.r_max = std::stod(parts[2]);
  binning.count = std::stoi(parts[3]);
  binning.validate();
  return binning;
}

fsv::GridSpec liftsplat_spec(const LiftSplatArgs& args, const fsv::CameraModel& cam) {
  double half_h, half_v;
  if (cam.lens == fsv::LensType::kFisheye) {
    half_h = cam.fisheye().max_theta();
    half_v = std::min(half_h, fsv::deg2rad(85.0));  // keep rows physical
  } else {
    half_h = std::atan(cam.width / (2.0 * cam.pinhole().fx));
    half_v = std::atan(cam.height / (2.0 * cam.pinhole().fy));
  }
  return fsv::GridSpec::equirect(args.grid_height, args.grid_width, -half_h, half_h, -half_v,
                                 half_v);
}

int run_liftsplat(const LiftSplatArgs& args) {
  const fsv::DatasetManifest manifest = fsv::load_manifest(args.dataset);
  const fsv::RigCalibration rig = load_rig_for_manifest(args.dataset, manifest, args.calib);
  fsv::validate_images(manifest, rig);

  const fsv::FrameRecord* frame = nullptr;
  int index = 0;
  for (const fsv::SceneRecord& scene : manifest.scenes) {
    for (const fsv::FrameRecord& f : scene.frames) {
      if (index++ == args.frame) {
        frame = &f;
      }
    }
  }
  if (!frame) {
    throw fsv::DataError("liftsplat: frame index " + std::to_string(args.frame) +
                         " out of range (" + std::to_string(index) + " frames)");
  }

  std::vector<const fsv::CameraModel*> cameras;
  for (const fsv::CameraModel& cam : rig.cameras) {
    const bool is_fisheye = cam.lens == fsv::LensType::kFisheye;
    if (args.camera_set == "all" || (args.camera_set == "fisheye" && is_fisheye) ||
        (args.camera_set == "pinhole" && !is_fisheye)) {
      if (frame->images.count(cam.id)) {
        cameras.push_back(&cam);
      }
    }
  }
  if (cameras.empty()) {
    throw fsv::DataError("liftsplat: frame '" + frame->id + "' has no images for camera set '" +
                         args.camera_set + "'");
  }

  const fsv::DepthBinning binning = parse_binning(args.binning);

  std::vector<float> file_logits;
  if (!args.logits_path.empty()) {
    std::ifstream in(args.logits_path, std::ios::binary);
    if (!in) {
      throw fsv::DataError("liftsplat: cannot open logits file " + args.logits_path);
    }
    const std::size_t count =
        static_cast<std::size_t>(binning.count) * args.grid_height * args.grid_width;
    file_logits.resize(count);
    in.read(reinterpret_cast<char*>(file_logits.data()),
            static_cast<std::streamsize>(count * sizeof(float)));
    const std::streamsize got = in.gcount();
    in.peek();  // probe for trailing bytes
    if (got != static_cast<std::streamsize>(count * sizeof(float)) || !in.eof()) {
      throw fsv::DataError("liftsplat: logits file must hold exactly D*H*W float32 values");
    }
  }

  const fs::path root = fs::path(args.dataset).parent_path();
  const std::size_t colon = args.bev_size.find(':');
  if (colon == std::string::npos) {
    throw fsv::DataError("liftsplat: --bev-size must look like 48:0.75");
  }
  const double bev_range = std::stod(args.bev_size.substr(0, colon));
  const double bev_cell = std::stod(args.bev_size.substr(colon + 1));
  fsv::BevGridSpec bev_spec;
  bev_spec.x_min = -bev_range;
  bev_spec.x_max = bev_range;
  bev_spec.y_min = -bev_range;
  bev_spec.y_max = bev_range;
  bev_spec.cell = bev_cell;
  bev_spec.z_min = args.z_min;
  bev_spec.z_max = args.z_max;
  bev_spec.validate();

  // Per-camera lift runs in parallel slots; the splat accumulates in fixed
  // camera order so the grid is independent of --threads.
  std::vector<fsv::LiftedVolume> volumes(cameras.size());
  std::vector<fsv::FrustumShellSet> frusta(cameras.size());
  fsv::parallel_for(cameras.size(), args.threads, [&](std::size_t i) {
    const fsv::CameraModel& cam = *cameras[i];
    const fsv::GridSpec spec = liftsplat_spec(args, cam);
    const fsv::Image8 image = fsv::read_ppm((root / frame->images.at(cam.id)).string());
    fsv::FeatureMap pixels = fsv::image_to_feature_map(image);
    for (float& v : pixels.data) {
      v /= 255.0f;
    }
    const fsv::FeatureMap features =
        fsv::apply_grid(pixels, fsv::build_grid(spec, cam), fsv::SampleMode::kBilinear);
    fsv::FeatureMap logits(args.grid_height, args.grid_width, binning.count);
    if (!file_logits.empty()) {
      // File layout is D x H x W; FeatureMap stores H x W x D.
      for (int d = 0; d < binning.count; ++d) {
        for (int h = 0; h < args.grid_height; ++h) {
          for (int w = 0; w < args.grid_width; ++w) {
            logits.at(h, w, d) =
                file_logits[(static_cast<std::size_t>(d) * args.grid_height + h) *
                                args.grid_width +
                            w];
          }
        }
      }
    }
    volumes[i] = fsv::lift(features, logits);
    frusta[i] = fsv::build_frustum(fsv::grid_directions(spec), args.grid_height, args.grid_width,
                                   binning, cam.extrinsics, cam.id);
  });

  fsv::BevGrid bev;
  bev.spec = bev_spec;
  bev.channels = 3;
  bev.data.assign(static_cast<std::size_t>(bev_spec.nx()) * bev_spec.ny() * 3, 0.0f);
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    fsv::splat_into(bev, volumes[i], frusta[i]);
  }

  fs::create_directories(args.out);
  fsv::save_bev_csv(bev, (fs::path(args.out) / "bev.csv").string());
  fsv::save_bev_heatmap(bev, (fs::path(args.out) / "bev.pgm").string());
  std::cerr << "fsv: splatted " << cameras.size() << " camera(s), total mass "
            << fsv::bev_total(bev) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"fsv: fisheye surround-view geometry, synthesis and evaluation toolkit"};
  app.require_subcommand(1);

  RectifyArgs rectify;
  CLI::App* rectify_cmd =
      app.add_subcommand("rectify", "Resample fisheye frames into a target projection");
  rectify_cmd->add_option("--input", rectify.input, "Manifest JSON or a single PPM image")
      ->required();
  rectify_cmd->add_option("--calib", rectify.calib,
                          "Calibration JSON (defaults to the manifest's)");
  rectify_cmd->add_option("--camera", rectify.camera, "Camera id to rectify")->required();
  rectify_cmd->add_option("--mode", rectify.mode, "Target projection")
      ->check(CLI::IsMember({"perspective", "cylindrical", "equirect"}));
  rectify_cmd->add_option("--out", rectify.out, "Output file (single image) or directory")
      ->required();
  rectify_cmd->add_option("--width", rectify.width, "Target width (default: source width)");
  rectify_cmd->add_option("--height", rectify.height, "Target height (default: source height)");
  rectify_cmd->add_option("--focal", rectify.focal,
                          "Perspective focal length in pixels (default: width/2)");
  rectify_cmd->add_option("--phi-span", rectify.phi_span_deg,
                          "Azimuth span in degrees (default: camera fov)");
  rectify_cmd->add_option("--y-span", rectify.y_span,
                          "Cylindrical half height (default: tan 60 deg)");
  rectify_cmd->add_option("--interp", rectify.interp, "Sampling mode")
      ->check(CLI::IsMember({"bilinear", "nearest"}));
  rectify_cmd->add_option("--save-grid", rectify.save_grid_path,
                          "Also dump the sampling grid (binary)");
  rectify_cmd->add_option("--threads", rectify.threads, "Worker threads over frames");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Run the detection evaluation protocol");
  eval_cmd->add_option("--gt", eval.gt, "Ground-truth manifest JSON")->required();
  eval_cmd->add_option("--pred", eval.pred, "Predictions JSON")->required();
  eval_cmd->add_option("--out", eval.out, "Metrics report JSON path")->required();
  eval_cmd->add_option("--csv", eval.csv, "Optional per-class CSV table");
  eval_cmd->add_option("--thresholds", eval.thresholds, "Match thresholds, meters");
  eval_cmd->add_option("--tp-threshold", eval.tp_threshold, "TP error matching threshold");
  eval_cmd->add_option("--bins", eval.bins, "Cumulative distance bins, e.g. 30,48");
  eval_cmd->add_option("--max-range", eval.max_range, "Detection range filter, meters");
  eval_cmd->add_option("--classes", eval.classes,
                       "Class set (default: union of ground-truth labels)");
  eval_cmd->add_flag("--trapezoid", eval.trapezoid,
                     "Plain trapezoidal AP integration (sensitivity mode)");

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a synthetic surround-view dataset");
  synth_cmd->add_option("--out", synth.out, "Output dataset directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--frames", synth.frames, "Frames to generate")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--objects", synth.objects, "Objects in the scene")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--rig", synth.rig, "Rig preset")
      ->check(CLI::IsMember({"4f6p", "4f", "6p", "2f-front-rear", "2f-left-right"}));
  synth_cmd->add_option("--hz", synth.hz, "Capture rate");
  synth_cmd->add_option("--image-scale", synth.image_scale, "Resolution scale factor");
  synth_cmd->add_flag("--no-images", synth.no_images, "Write only metadata");
  synth_cmd->add_option("--supersample", synth.supersample, "Antialiasing samples per axis");
  synth_cmd->add_option("--threads", synth.threads, "Render worker threads");

  CompressionArgs compression;
  CLI::App* compression_cmd =
      app.add_subcommand("compression", "Fisheye/pinhole pixel-compression analysis");
  compression_cmd->add_option("--dataset", compression.dataset, "Manifest JSON")->required();
  compression_cmd->add_option("--calib", compression.calib,
                              "Calibration JSON (defaults to the manifest's)");
  compression_cmd->add_option("--out", compression.out, "Output directory")->required();
  compression_cmd->add_option("--per-class-cap", compression.per_class_cap,
                              "Max samples per class (<=0: keep all)");
  compression_cmd->add_option("--lowess-frac", compression.lowess_frac, "LOWESS fraction");
  compression_cmd->add_option("--lowess-iters", compression.lowess_iters,
                              "LOWESS robustness passes");
  compression_cmd->add_option("--seed", compression.seed, "Sampling seed");
  compression_cmd->add_option("--edge-samples", compression.edge_samples,
                              "Box edge densification");
  compression_cmd->add_option("--threads", compression.threads, "Worker threads");

  LiftSplatArgs liftsplat;
  CLI::App* liftsplat_cmd =
      app.add_subcommand("liftsplat", "Lift one frame's features onto a BEV grid");
  liftsplat_cmd->add_option("--dataset", liftsplat.dataset, "Manifest JSON")->required();
  liftsplat_cmd->add_option("--calib", liftsplat.calib,
                            "Calibration JSON (defaults to the manifest's)");
  liftsplat_cmd->add_option("--out", liftsplat.out, "Output directory")->required();
  liftsplat_cmd->add_option("--camera-set", liftsplat.camera_set, "Cameras to use")
      ->check(CLI::IsMember({"fisheye", "pinhole", "all"}));
  liftsplat_cmd->add_option("--frame", liftsplat.frame, "Global frame index");
  liftsplat_cmd->add_option("--binning", liftsplat.binning,
                            "Depth shells as spacing:r_min:r_max:count (default uniform:1:68:67)");
  liftsplat_cmd->add_option("--grid-height", liftsplat.grid_height, "Angular grid rows");
  liftsplat_cmd->add_option("--grid-width", liftsplat.grid_width, "Angular grid columns");
  liftsplat_cmd->add_option("--bev-size", liftsplat.bev_size,
                            "BEV half extent and cell size as range:cell (default 48:0.75)");
  liftsplat_cmd->add_option("--zmin", liftsplat.z_min, "Minimum accepted z, meters");
  liftsplat_cmd->add_option("--zmax", liftsplat.z_max, "Maximum accepted z, meters");
  liftsplat_cmd->add_option("--logits", liftsplat.logits_path,
                            "Binary float32 D*H*W depth logits (default: uniform)");
  liftsplat_cmd->add_option("--threads", liftsplat.threads, "Per-camera worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (rectify_cmd->parsed()) {
      return run_rectify(rectify);
    }
    if (eval_cmd->parsed()) {
      return run_eval(eval);
    }
    if (synth_cmd->parsed()) {
      return run_synth(synth);
    }
    if (compression_cmd->parsed()) {
      return run_compression(compression);
    }
    if (liftsplat_cmd->parsed()) {
      return run_liftsplat(liftsplat);
    }
  } catch (const fsv::NumericalFailure& e) {
    std::cerr << "fsv: error: numerical: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "fsv: error: data: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
