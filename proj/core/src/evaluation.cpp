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

#include "fsv/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

namespace fsv {

using ordered_json = nlohmann::ordered_json;

void EvalConfig::validate() const {
  if (thresholds.empty() || !std::is_sorted(thresholds.begin(), thresholds.end()) ||
      thresholds.front() <= 0.0) {
    throw std::invalid_argument("EvalConfig: thresholds must be positive and sorted");
  }
  if (classes.empty()) {
    throw std::invalid_argument("EvalConfig: class set must be non-empty");
  }
  if (!(tp_threshold > 0.0)) {
    throw std::invalid_argument("EvalConfig: tp_threshold must be positive");
  }
  if (!(max_range > 0.0)) {
    throw std::invalid_argument("EvalConfig: max_range must be positive");
  }
  if (!std::is_sorted(distance_bins.begin(), distance_bins.end()) ||
      (!distance_bins.empty() && distance_bins.front() <= 0.0)) {
    throw std::invalid_argument("EvalConfig: distance bins must be positive and sorted");
  }
}

MatchResult match_greedy(const std::vector<Box3D>& gts, const std::vector<Box3D>& preds,
                         const std::string& cls, double threshold) {
  std::vector<std::size_t> gt_idx;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (gts[i].label == cls) {
      gt_idx.push_back(i);
    }
  }
  std::vector<std::size_t> pred_idx;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].label == cls) {
      if (!preds[i].score) {
        throw DataError("match_greedy: prediction without a score");
      }
      pred_idx.push_back(i);
    }
  }
  // Descending score; stable keeps the input order as the tie-break.
  std::stable_sort(pred_idx.begin(), pred_idx.end(),
                   [&](std::size_t a, std::size_t b) { return *preds[a].score > *preds[b].score; });

  MatchResult result;
  std::vector<bool> claimed(gts.size(), false);
  for (std::size_t pi : pred_idx) {
    std::size_t best_gt = gts.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t gi : gt_idx) {
      if (claimed[gi]) {
        continue;
      }
      const double d = center_distance_2d(gts[gi], preds[pi]);
      if (d < best_dist) {  // strict: distance ties keep the earlier gt index
        best_dist = d;
        best_gt = gi;
      }
    }
    if (best_gt < gts.size() && best_dist <= threshold) {
      claimed[best_gt] = true;
      MatchedPair pair;
      pair.gt_index = best_gt;
      pair.pred_index = pi;
      pair.distance = best_dist;
      pair.ate = best_dist;
      pair.ase = 1.0 - aligned_iou(gts[best_gt], preds[pi]);
      pair.aoe = yaw_error(gts[best_gt], preds[pi]);
      result.pairs.push_back(pair);
    } else {
      result.unmatched_preds.push_back(pi);
    }
  }
  for (std::size_t gi : gt_idx) {
    if (!claimed[gi]) {
      result.unmatched_gts.push_back(gi);
    }
  }
  return result;
}

double average_precision(std::vector<RankedDetection> detections, std::size_t n_gt,
                         bool nuscenes_integration) {
  if (n_gt == 0) {
    return 0.0;
  }
  if (detections.empty()) {
    return 0.0;
  }
  std::stable_sort(detections.begin(), detections.end(),
                   [](const RankedDetection& a, const RankedDetection& b) { return a.score > b.score; });

  std::vector<double> recall(detections.size());
  std::vector<double> precision(detections.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    if (detections[i].true_positive) {
      ++tp;
    }
    recall[i] = static_cast<double>(tp) / static_cast<double>(n_gt);
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }

  if (!nuscenes_integration) {
    // Plain trapezoid over the raw curve from recall 0.
    double ap = 0.0;
    double prev_rec = 0.0;
    for (std::size_t i = 0; i < recall.size(); ++i) {
      ap += (recall[i] - prev_rec) * precision[i];
      prev_rec = recall[i];
    }
    return ap;
  }

  // Collapse equal-recall runs to the precision after all detections at that
  // recall, then linearly interpolate onto the 101-point grid.
  std::vector<double> rec_pts, prec_pts;
  for (std::size_t i = 0; i < recall.size(); ++i) {
    if (!rec_pts.empty() && recall[i] == rec_pts.back()) {
      prec_pts.back() = precision[i];
    } else {
      rec_pts.push_back(recall[i]);
      prec_pts.push_back(precision[i]);
    }
  }
  double sum = 0.0;
  for (int k = 11; k <= 100; ++k) {
    const double g = static_cast<double>(k) / 100.0;
    double p;
    if (g <= rec_pts.front()) {
      p = prec_pts.front();
    } else if (g > rec_pts.back()) {
      p = 0.0;
    } else {
      const auto it = std::lower_bound(rec_pts.begin(), rec_pts.end(), g);
      const std::size_t hi = static_cast<std::size_t>(it - rec_pts.begin());
      if (rec_pts[hi] == g) {
        p = prec_pts[hi];
      } else {
        const std::size_t lo = hi - 1;
        const double t = (g - rec_pts[lo]) / (rec_pts[hi] - rec_pts[lo]);
        p = prec_pts[lo] + t * (prec_pts[hi] - prec_pts[lo]);
      }
    }
    sum += std::max(p - 0.1, 0.0);
  }
  return sum / 90.0 / 0.9;
}

TpErrors tp_errors(const std::vector<std::vector<MatchedPair>>& per_class_pairs) {
  double ate_sum = 0.0, ase_sum = 0.0, aoe_sum = 0.0;
  std::size_t classes_with_matches = 0;
  for (const auto& pairs : per_class_pairs) {
    if (pairs.empty()) {
      continue;
    }
    double a = 0.0, s = 0.0, o = 0.0;
    for (const MatchedPair& p : pairs) {
      a += p.ate;
      s += p.ase;
      o += p.aoe;
    }
    const double n = static_cast<double>(pairs.size());
    ate_sum += a / n;
    ase_sum += s / n;
    aoe_sum += o / n;
    ++classes_with_matches;
  }
  TpErrors e;
  if (classes_with_matches == 0) {
    e.ate = e.ase = e.aoe = 1.0;
    e.clamped = true;
  } else {
    const double n = static_cast<double>(classes_with_matches);
    e.ate = ate_sum / n;
    e.ase = ase_sum / n;
    e.aoe = aoe_sum / n;
  }
  return e;
}

double mean_ap(const std::vector<std::vector<double>>& ap_table) {
  if (ap_table.empty()) {
    throw std::invalid_argument("mean_ap: empty table");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : ap_table) {
    if (row.empty()) {
      throw std::invalid_argument("mean_ap: incomplete table row");
    }
    for (double v : row) {
      sum += v;
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

double fds(double map, double mate, double mase, double maoe) {
  const double tp_term = (1.0 - std::min(1.0, mate)) + (1.0 - std::min(1.0, mase)) +
                         (1.0 - std::min(1.0, maoe));
  return (3.0 * map + tp_term) / 6.0;
}

namespace {

double range_2d(const Box3D& box) { return std::hypot(box.center.x, box.center.y); }

FrameBoxes filter_boxes(const FrameBoxes& frames, double max_range,
                        const std::set<std::string>& classes,
                        std::map<std::string, std::size_t>* excluded_by_label) {
  FrameBoxes out;
  for (const auto& [frame_id, boxes] : frames) {
    std::vector<Box3D>& kept = out[frame_id];
    for (const Box3D& box : boxes) {
      if (classes.find(box.label) == classes.end()) {
        if (excluded_by_label) {
          ++(*excluded_by_label)[box.label];
        }
        continue;
      }
      if (range_2d(box) > max_range) {
        continue;
      }
      kept.push_back(box);
    }
  }
  return out;
}

MetricsReport evaluate_filtered(const FrameBoxes& gts, const FrameBoxes& preds,
                                const EvalConfig& config);

}  // namespace

MetricsReport evaluate(const FrameBoxes& gts, const FrameBoxes& preds, const EvalConfig& config) {
  config.validate();
  for (const auto& [frame_id, boxes] : preds) {
    (void)boxes;
    if (gts.find(frame_id) == gts.end()) {
      throw DataError("evaluate: prediction frame '" + frame_id +
                      "' does not exist in the ground truth");
    }
  }
  return evaluate_filtered(gts, preds, config);
}

namespace {

MetricsReport evaluate_filtered(const FrameBoxes& all_gts, const FrameBoxes& all_preds,
                                const EvalConfig& config) {
  const std::set<std::string> class_set(config.classes.begin(), config.classes.end());
  std::map<std::string, std::size_t> excluded_gt, excluded_pred;
  const FrameBoxes gts = filter_boxes(all_gts, config.max_range, class_set, &excluded_gt);
  const FrameBoxes preds = filter_boxes(all_preds, config.max_range, class_set, &excluded_pred);

  std::vector<std::string> classes = config.classes;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  MetricsReport report;
  report.thresholds = config.thresholds;
  report.tp_threshold = config.tp_threshold;
  report.max_range = config.max_range;
  report.n_frames = all_gts.size();

  for (const auto& [label, count] : excluded_pred) {
    report.warnings.push_back("excluded " + std::to_string(count) +
                              " prediction(s) with unknown class '" + label + "'");
  }
  for (const auto& [label, count] : excluded_gt) {
    report.warnings.push_back("excluded " + std::to_string(count) +
                              " ground-truth box(es) with unknown class '" + label + "'");
  }

  std::vector<std::vector<double>> defined_ap_rows;
  std::vector<std::vector<MatchedPair>> tp_pairs_per_class;

  for (const std::string& cls : classes) {
    ClassReport cr;
    cr.name = cls;
    for (const auto& [frame_id, boxes] : gts) {
      (void)frame_id;
      for (const Box3D& b : boxes) {
        if (b.label == cls) {
          ++cr.n_gt;
        }
      }
    }
    for (const auto& [frame_id, boxes] : preds) {
      (void)frame_id;
      for (const Box3D& b : boxes) {
        if (b.label == cls) {
          ++cr.n_pred;
        }
      }
    }
    report.n_gt_total += cr.n_gt;
    report.n_pred_total += cr.n_pred;

    const bool present = cr.n_gt > 0 || cr.n_pred > 0;
    std::vector<double> ap_row;
    for (double threshold : config.thresholds) {
      if (!present) {
        cr.ap.push_back(std::nullopt);
        continue;
      }
      std::vector<RankedDetection> ranked;
      for (const auto& [frame_id, frame_preds] : preds) {
        const auto git = gts.find(frame_id);
        static const std::vector<Box3D> kEmpty;
        const std::vector<Box3D>& frame_gts = git != gts.end() ? git->second : kEmpty;
        const MatchResult m = match_greedy(frame_gts, frame_preds, cls, threshold);
        for (const MatchedPair& p : m.pairs) {
          ranked.push_back({*frame_preds[p.pred_index].score, true});
        }
        for (std::size_t pi : m.unmatched_preds) {
          ranked.push_back({*frame_preds[pi].score, false});
        }
      }
      const double ap = average_precision(std::move(ranked), cr.n_gt, config.nuscenes_integration);
      cr.ap.push_back(ap);
      ap_row.push_back(ap);
    }
    if (present) {
      defined_ap_rows.push_back(ap_row);
    }

    // Error components at the TP threshold.
    std::vector<MatchedPair> cls_pairs;
    for (const auto& [frame_id, frame_preds] : preds) {
      const auto git = gts.find(frame_id);
      static const std::vector<Box3D> kEmpty;
      const std::vector<Box3D>& frame_gts = git != gts.end() ? git->second : kEmpty;
      const MatchResult m = match_greedy(frame_gts, frame_preds, cls, config.tp_threshold);
      cls_pairs.insert(cls_pairs.end(), m.pairs.begin(), m.pairs.end());
    }
    cr.n_tp_matches = cls_pairs.size();
    if (!cls_pairs.empty()) {
      double a = 0.0, s = 0.0, o = 0.0;
      for (const MatchedPair& p : cls_pairs) {
        a += p.ate;
        s += p.ase;
        o += p.aoe;
      }
      const double n = static_cast<double>(cls_pairs.size());
      cr.ate = a / n;
      cr.ase = s / n;
      cr.aoe = o / n;
    }
    tp_pairs_per_class.push_back(std::move(cls_pairs));
    report.classes.push_back(std::move(cr));
  }

  report.map = defined_ap_rows.empty() ? 0.0 : mean_ap(defined_ap_rows);
  const TpErrors errors = tp_errors(tp_pairs_per_class);
  report.mate = errors.ate;
  report.mase = errors.ase;
  report.maoe = errors.aoe;
  report.tp_errors_clamped = errors.clamped;
  report.fds_value = fds(report.map, report.mate, report.mase, report.maoe);

  for (double upper : config.distance_bins) {
    EvalConfig bin_config = config;
    bin_config.max_range = upper;
    bin_config.distance_bins.clear();
    report.bin_upper.push_back(upper);
    report.bins.push_back(evaluate_filtered(all_gts, all_preds, bin_config));
  }
  return report;
}

std::string format_threshold(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

ordered_json report_json(const MetricsReport& r) {
  ordered_json j;
  j["map"] = r.map;
  j["mate"] = r.mate;
  j["mase"] = r.mase;
  j["maoe"] = r.maoe;
  j["fds"] = r.fds_value;
  j["tp_errors_clamped"] = r.tp_errors_clamped;
  j["max_range"] = r.max_range;
  j["tp_threshold"] = r.tp_threshold;
  j["n_frames"] = r.n_frames;
  j["n_gt"] = r.n_gt_total;
  j["n_pred"] = r.n_pred_total;
  ordered_json classes = ordered_json::array();
  for (const ClassReport& c : r.classes) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["n_gt"] = c.n_gt;
    jc["n_pred"] = c.n_pred;
    jc["n_tp_matches"] = c.n_tp_matches;
    ordered_json ap;
    for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
      const std::string key = format_threshold(r.thresholds[i]);
      if (c.ap[i]) {
        ap[key] = *c.ap[i];
      } else {
        ap[key] = nullptr;
      }
    }
    jc["ap"] = ap;
    jc["ate"] = c.ate ? ordered_json(*c.ate) : ordered_json(nullptr);
    jc["ase"] = c.ase ? ordered_json(*c.ase) : ordered_json(nullptr);
    jc["aoe"] = c.aoe ? ordered_json(*c.aoe) : ordered_json(nullptr);
    classes.push_back(jc);
  }
  j["classes"] = classes;
  ordered_json bins = ordered_json::array();
  for (std::size_t i = 0; i < r.bins.size(); ++i) {
    ordered_json jb;
    jb["range"] = r.bin_upper[i];
    jb["report"] = report_json(r.bins[i]);
    bins.push_back(jb);
  }
  j["bins"] = bins;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace

std::string report_to_json(const MetricsReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  ordered_json thresholds = ordered_json::array();
  for (double t : report.thresholds) {
    thresholds.push_back(t);
  }
  j["thresholds"] = thresholds;
  j["overall"] = report_json(report);
  return j.dump(2) + "\n";
}

void save_report(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_report: cannot open " + path);
  }
  out << report_to_json(report);
  if (!out) {
    throw DataError("save_report: write failed for " + path);
  }
}

void save_report_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_report_csv: cannot open " + path);
  }
  out << "class,n_gt,n_pred,n_tp_matches";
  for (double t : report.thresholds) {
    out << ",ap@" << format_threshold(t);
  }
  out << ",ate,ase,aoe\n";
  char buf[64];
  auto field = [&](std::optional<double> v) {
    if (!v) {
      return std::string();
    }
    std::snprintf(buf, sizeof(buf), "%.9g", *v);
    return std::string(buf);
  };
  for (const ClassReport& c : report.classes) {
    out << c.name << "," << c.n_gt << "," << c.n_pred << "," << c.n_tp_matches;
    for (const auto& ap : c.ap) {
      out << "," << field(ap);
    }
    out << "," << field(c.ate) << "," << field(c.ase) << "," << field(c.aoe) << "\n";
  }
  if (!out) {
    throw DataError("save_report_csv: write failed for " + path);
  }
}

}  // namespace fsv
