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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fsv/boxes.hpp"

namespace fsv {

/// Detection evaluation protocol configuration.
struct EvalConfig {
  std::vector<double> thresholds{0.5, 1.0, 2.0, 4.0};  // center-distance match radii, meters
  std::vector<std::string> classes;
  double tp_threshold = 2.0;  // matching radius for the TP error metrics
  double max_range = 48.0;    // drop boxes with 2D center range beyond this
  std::vector<double> distance_bins;  // cumulative upper bounds (e.g. 30, 48)
  bool nuscenes_integration = true;   // false: plain trapezoidal AP (sensitivity mode)

  void validate() const;
};

struct MatchedPair {
  std::size_t gt_index = 0;
  std::size_t pred_index = 0;
  double distance = 0.0;  // 2D center distance, meters
  double ate = 0.0;
  double ase = 0.0;
  double aoe = 0.0;
};

struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<std::size_t> unmatched_gts;
  std::vector<std::size_t> unmatched_preds;
};

/// Greedy center-distance matching within one frame for one class.
/// Predictions are processed in descending score (ties: earlier input index);
/// each claims the nearest unclaimed ground truth of the class within the
/// threshold (distance <= threshold); distance ties break toward the earlier
/// ground-truth index. Indices refer to the input vectors.
MatchResult match_greedy(const std::vector<Box3D>& gts, const std::vector<Box3D>& preds,
                         const std::string& cls, double threshold);

/// One globally ranked detection: score and whether it matched a ground truth.
struct RankedDetection {
  double score = 0.0;
  bool true_positive = false;
};

/// Center-distance AP from the ranked detection list of one class/threshold.
/// With nuscenes_integration, precision is linearly interpolated onto a
/// 101-point recall grid (collapsing equal-recall runs to their final
/// precision, left-extended with the first value, zero beyond max recall) and
/// AP = mean over grid points 0.11..1.00 of max(p - 0.1, 0) / 0.9. Otherwise a
/// plain trapezoidal integral of the raw curve. Input order is the tie-break
/// for equal scores. Returns 0 when there is no ground truth.
double average_precision(std::vector<RankedDetection> detections, std::size_t n_gt,
                         bool nuscenes_integration = true);

struct TpErrors {
  double ate = 0.0;
  double ase = 0.0;
  double aoe = 0.0;
  bool clamped = false;  // no matches anywhere; values clamped to 1.0
};

/// Class means first, then the average over classes with at least one match.
TpErrors tp_errors(const std::vector<std::vector<MatchedPair>>& per_class_pairs);

/// Arithmetic mean of a complete class x threshold AP table.
double mean_ap(const std::vector<std::vector<double>>& ap_table);

/// Composite detection score:
/// (1/6) * [3*mAP + sum over {mATE, mASE, mAOE} of (1 - min(1, mTP))].
double fds(double map, double mate, double mase, double maoe);

struct ClassReport {
  std::string name;
  std::size_t n_gt = 0;
  std::size_t n_pred = 0;
  std::size_t n_tp_matches = 0;                // at the TP threshold
  std::vector<std::optional<double>> ap;       // per threshold; nullopt if class absent
  std::optional<double> ate, ase, aoe;         // per-class error means
};

struct MetricsReport {
  std::vector<double> thresholds;
  double tp_threshold = 2.0;
  double max_range = 48.0;
  std::vector<ClassReport> classes;  // sorted by name
  double map = 0.0;
  double mate = 1.0;
  double mase = 1.0;
  double maoe = 1.0;
  double fds_value = 0.0;
  bool tp_errors_clamped = false;
  std::size_t n_frames = 0;
  std::size_t n_gt_total = 0;
  std::size_t n_pred_total = 0;
  std::vector<std::string> warnings;
  std::vector<double> bin_upper;      // cumulative range bins evaluated
  std::vector<MetricsReport> bins;    // one sub-report per bin_upper entry
};

using FrameBoxes = std::map<std::string, std::vector<Box3D>>;

/// Full protocol over all frames, classes and thresholds. Every prediction
/// frame id must exist in the ground truth map. Boxes outside max_range and
/// boxes of classes outside the configured set are excluded (the latter is
/// reported in warnings). When distance bins are configured, each bin
/// re-evaluates with boxes filtered to the cumulative 0..R range.
MetricsReport evaluate(const FrameBoxes& gts, const FrameBoxes& preds, const EvalConfig& config);

/// Stable-key-order JSON document for a report.
std::string report_to_json(const MetricsReport& report);
void save_report(const MetricsReport& report, const std::string& path);
/// Per-class CSV table (AP per threshold plus TP error means).
void save_report_csv(const MetricsReport& report, const std::string& path);

}  // namespace fsv
