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

#include "fsv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "fsv/parallel.hpp"

namespace fsv {

namespace {

double tricube(double u) {
  const double a = 1.0 - u * u * u;
  return a * a * a;
}

double bisquare(double u) {
  const double a = 1.0 - u * u;
  return a * a;
}

double median_abs(std::vector<double> values) {
  const std::size_t n = values.size();
  std::nth_element(values.begin(), values.begin() + n / 2, values.end());
  double med = values[n / 2];
  if (n % 2 == 0) {
    const auto lower = std::max_element(values.begin(), values.begin() + n / 2);
    med = (med + *lower) / 2.0;
  }
  return med;
}

}  // namespace

LowessFit lowess(std::vector<double> x, std::vector<double> y, double fraction, int iterations) {
  const std::size_t n = x.size();
  if (n != y.size()) {
    throw DimensionMismatch("lowess: x and y differ in length");
  }
  if (n < 3) {
    throw std::invalid_argument("lowess: need at least 3 points");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("lowess: fraction must be in (0, 1]");
  }
  if (iterations < 0) {
    throw std::invalid_argument("lowess: iterations must be >= 0");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  LowessFit fit;
  fit.x.resize(n);
  fit.y.assign(n, 0.0);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    fit.x[i] = x[order[i]];
    ys[i] = y[order[i]];
  }

  const std::size_t window =
      std::min(n, std::max<std::size_t>(2, static_cast<std::size_t>(fraction * n)));
  std::vector<double> robustness(n, 1.0);
  std::vector<double> residuals(n);

  for (int pass = 0; pass <= iterations; ++pass) {
    std::size_t left = 0;
    for (std::size_t i = 0; i < n; ++i) {
      // Slide the window of `window` nearest neighbors (x is sorted).
      while (left + window < n &&
             fit.x[left + window] - fit.x[i] < fit.x[i] - fit.x[left]) {
        ++left;
      }
      const std::size_t right = left + window - 1;
      const double h = std::max(fit.x[right] - fit.x[i], fit.x[i] - fit.x[left]);

      double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
      for (std::size_t j = left; j <= right; ++j) {
        const double dist = std::abs(fit.x[j] - fit.x[i]);
        double w = robustness[j];
        if (h > 0.0) {
          const double u = dist / h;
          if (u >= 1.0) {
            continue;
          }
          w *= tricube(u);
        }
        sw += w;
        swx += w * fit.x[j];
        swy += w * ys[j];
        swxx += w * fit.x[j] * fit.x[j];
        swxy += w * fit.x[j] * ys[j];
      }
      if (sw <= 0.0) {
        fit.y[i] = ys[i];
        continue;
      }
      const double denom = sw * swxx - swx * swx;
      if (std::abs(denom) <= 1e-12 * sw * std::max(1.0, swxx)) {
        fit.y[i] = swy / sw;  // degenerate window: weighted mean
      } else {
        const double slope = (sw * swxy - swx * swy) / denom;
        const double intercept = (swy - slope * swx) / sw;
        fit.y[i] = intercept + slope * fit.x[i];
      }
    }
    if (pass == iterations) {
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      residuals[i] = std::abs(ys[i] - fit.y[i]);
    }
    const double s = median_abs(residuals);
    if (s <= 0.0) {
      break;  // exact fit; further passes cannot change anything
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double u = residuals[i] / (6.0 * s);
      robustness[i] = u < 1.0 ? bisquare(u) : 0.0;
    }
  }
  return fit;
}

double area_ratio(double fisheye_w, double fisheye_h, double pinhole_w, double pinhole_h) {
  return (fisheye_w * fisheye_h) / (pinhole_w * pinhole_h);
}

CompressionResult compression_samples(const DatasetManifest& manifest, const RigCalibration& rig,
                                      const CompressionOptions& options) {
  rig.validate();
  if (!rig.has_lens(LensType::kFisheye) || !rig.has_lens(LensType::kPinhole)) {
    throw DataError("compression_samples: rig must contain both lens types");
  }

  std::vector<const FrameRecord*> frames;
  for (const SceneRecord& scene : manifest.scenes) {
    for (const FrameRecord& frame : scene.frames) {
      frames.push_back(&frame);
    }
  }

  // One result slot per frame keeps the output independent of the thread count.
  std::vector<std::vector<CompressionSample>> per_frame(frames.size());
  std::vector<std::size_t> per_frame_skipped(frames.size(), 0);
  parallel_for(frames.size(), options.threads, [&](std::size_t fi) {
    const FrameRecord& frame = *frames[fi];
    for (const Box3D& box : frame.annotations) {
      double best_f = -1.0, best_p = -1.0;
      for (const CameraModel& cam : rig.cameras) {
        const auto bbox = project_box(box, cam, options.edge_samples);
        if (!bbox) {
          continue;
        }
        double& best = cam.lens == LensType::kFisheye ? best_f : best_p;
        best = std::max(best, bbox->area());
      }
      if (best_f < 0.0 || best_p <= 0.0) {
        ++per_frame_skipped[fi];  // invisible to one lens type, or degenerate pinhole bbox
        continue;
      }
      CompressionSample s;
      s.object_id = box.track_id;
      s.frame_id = frame.id;
      s.label = box.label;
      s.distance = box.center.norm();
      s.fisheye_area = best_f;
      s.pinhole_area = best_p;
      s.ratio = best_f / best_p;
      per_frame[fi].push_back(std::move(s));
    }
  });

  std::vector<CompressionSample> samples;
  std::size_t skipped = 0;
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    samples.insert(samples.end(), per_frame[fi].begin(), per_frame[fi].end());
    skipped += per_frame_skipped[fi];
  }

  if (options.per_class_cap > 0) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      by_label[samples[i].label].push_back(i);
    }
    std::vector<CompressionSample> capped;
    for (auto& [label, idx] : by_label) {
      std::mt19937_64 gen(options.seed ^ std::hash<std::string>{}(label));
      // Fisher-Yates with the raw generator (deterministic across platforms).
      for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen() % i);
        std::swap(idx[i - 1], idx[j]);
      }
      const std::size_t keep = std::min<std::size_t>(idx.size(),
                                                     static_cast<std::size_t>(options.per_class_cap));
      for (std::size_t i = 0; i < keep; ++i) {
        capped.push_back(samples[idx[i]]);
      }
    }
    samples = std::move(capped);
  }

  std::stable_sort(samples.begin(), samples.end(),
                   [](const CompressionSample& a, const CompressionSample& b) {
                     if (a.label != b.label) return a.label < b.label;
                     return a.distance < b.distance;
                   });
  return {std::move(samples), skipped};
}

CompressionCurves fit_compression_curves(const std::vector<CompressionSample>& samples,
                                         double fraction, int iterations) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const CompressionSample& s : samples) {
    groups[s.label].first.push_back(s.distance);
    groups[s.label].second.push_back(s.ratio);
    groups["all"].first.push_back(s.distance);
    groups["all"].second.push_back(s.ratio);
  }
  CompressionCurves curves;
  for (auto& [label, xy] : groups) {
    if (xy.first.size() < 3) {
      continue;
    }
    curves.labels.push_back(label);
    curves.fits.push_back(lowess(xy.first, xy.second, fraction, iterations));
  }
  return curves;
}

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

const char* class_color(std::size_t index) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return kPalette[index % std::size(kPalette)];
}

}  // namespace

void save_samples_csv(const std::vector<CompressionSample>& samples, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_samples_csv: cannot open " + path);
  }
  out << "object_id,frame_id,label,distance_m,fisheye_area_px2,pinhole_area_px2,ratio\n";
  char buf[256];
  for (const CompressionSample& s : samples) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%.9g,%.9g,%.9g,%.9g\n", s.object_id.c_str(),
                  s.frame_id.c_str(), s.label.c_str(), s.distance, s.fisheye_area, s.pinhole_area,
                  s.ratio);
    out << buf;
  }
  if (!out) {
    throw DataError("save_samples_csv: write failed for " + path);
  }
}

void save_curves_csv(const CompressionCurves& curves, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_curves_csv: cannot open " + path);
  }
  out << "label,distance_m,fitted_ratio\n";
  char buf[128];
  for (std::size_t c = 0; c < curves.labels.size(); ++c) {
    const LowessFit& fit = curves.fits[c];
    for (std::size_t i = 0; i < fit.x.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g\n", curves.labels[c].c_str(), fit.x[i],
                    fit.y[i]);
      out << buf;
    }
  }
  if (!out) {
    throw DataError("save_curves_csv: write failed for " + path);
  }
}

std::string compression_svg(const std::vector<CompressionSample>& samples,
                            const CompressionCurves& curves) {
  constexpr int kWidth = 800, kHeight = 500;
  constexpr int kLeft = 60, kRight = 170, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_max = 10.0, y_max = 1.0;
  for (const CompressionSample& s : samples) {
    x_max = std::max(x_max, s.distance);
    y_max = std::max(y_max, s.ratio);
  }
  x_max *= 1.05;
  y_max = std::max(1.1, y_max * 1.05);

  auto sx = [&](double x) { return kLeft + x / x_max * plot_w; };
  auto sy = [&](double y) { return kTop + (1.0 - y / y_max) * plot_h; };

  std::map<std::string, std::size_t> label_index;
  for (const CompressionSample& s : samples) {
    label_index.emplace(s.label, label_index.size());
  }
  // Re-number in sorted order so colors do not depend on encounter order.
  std::size_t li = 0;
  for (auto& [label, index] : label_index) {
    index = li++;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (double x = 0.0; x <= x_max; x += 10.0) {
    svg << "<line x1=\"" << fmt(sx(x), 2) << "\" y1=\"" << kTop + plot_h << "\" x2=\""
        << fmt(sx(x), 2) << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(sx(x), 2) << "\" y=\"" << kTop + plot_h + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x, 0) << "</text>\n";
  }
  for (double y = 0.0; y <= y_max + 1e-9; y += 0.2) {
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(sy(y), 2) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(sy(y), 2) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << fmt(sy(y) + 4, 2)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y, 1) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">distance from ego (m)</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">fisheye/pinhole bbox area ratio</text>\n";

  // Parity line at ratio 1.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << fmt(sy(1.0), 2) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << fmt(sy(1.0), 2) << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";

  for (const CompressionSample& s : samples) {
    svg << "<circle cx=\"" << fmt(sx(s.distance), 2) << "\" cy=\"" << fmt(sy(s.ratio), 2)
        << "\" r=\"2\" fill=\"" << class_color(label_index[s.label])
        << "\" fill-opacity=\"0.45\"/>\n";
  }
  for (std::size_t c = 0; c < curves.labels.size(); ++c) {
    const LowessFit& fit = curves.fits[c];
    const bool overall = curves.labels[c] == "all";
    svg << "<polyline fill=\"none\" stroke=\""
        << (overall ? "#000000" : class_color(label_index[curves.labels[c]]))
        << "\" stroke-width=\"" << (overall ? 2.5 : 1.8) << "\" points=\"";
    for (std::size_t i = 0; i < fit.x.size(); ++i) {
      svg << fmt(sx(fit.x[i]), 2) << "," << fmt(sy(fit.y[i]), 2) << " ";
    }
    svg << "\"/>\n";
  }

  // Legend.
  int row = 0;
  for (const auto& [label, index] : label_index) {
    const double ly = kTop + 10 + 18 * row++;
    svg << "<circle cx=\"" << kLeft + plot_w + 18 << "\" cy=\"" << fmt(ly, 2) << "\" r=\"4\" fill=\""
        << class_color(index) << "\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w + 28 << "\" y=\"" << fmt(ly + 4, 2)
        << "\" font-size=\"12\">" << label << "</text>\n";
  }
  const double ly = kTop + 10 + 18 * row;
  svg << "<line x1=\"" << kLeft + plot_w + 10 << "\" y1=\"" << fmt(ly, 2) << "\" x2=\""
      << kLeft + plot_w + 26 << "\" y2=\"" << fmt(ly, 2) << "\" stroke=\"#000000\" stroke-width=\"2.5\"/>\n";
  svg << "<text x=\"" << kLeft + plot_w + 28 << "\" y=\"" << fmt(ly + 4, 2)
      << "\" font-size=\"12\">all (LOWESS)</text>\n";

  svg << "</svg>\n";
  return svg.str();
}

void save_compression_svg(const std::vector<CompressionSample>& samples,
                          const CompressionCurves& curves, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("save_compression_svg: cannot open " + path);
  }
  out << compression_svg(samples, curves);
  if (!out) {
    throw DataError("save_compression_svg: write failed for " + path);
  }
}

}  // namespace fsv
