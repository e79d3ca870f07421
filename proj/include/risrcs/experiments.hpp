// SPDX-License-Identifier: Apache-2.0
//
// risrcs: RCS-based received power model for reconfigurable intelligent surfaces
// Copyright (C) 2026 The risrcs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "risrcs/common.hpp"
#include "risrcs/control.hpp"
#include "risrcs/link.hpp"

namespace risrcs {

enum class SweepParameter { d1, d2, theta2 };
enum class Configuration { one_bit, continuous_aligned, all_zero };

inline std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::d1: return "d1";
    case SweepParameter::d2: return "d2";
    case SweepParameter::theta2: return "theta2";
  }
  return "?";
}

inline SweepParameter parse_sweep_parameter(const std::string& s) {
  if (s == "d1") return SweepParameter::d1;
  if (s == "d2") return SweepParameter::d2;
  if (s == "theta2") return SweepParameter::theta2;
  throw InputError("unknown sweep parameter '" + s + "' (expected d1, d2 or theta2)");
}

inline std::string to_string(Configuration c) {
  switch (c) {
    case Configuration::one_bit: return "one-bit";
    case Configuration::continuous_aligned: return "continuous-aligned";
    case Configuration::all_zero: return "all-zero";
  }
  return "?";
}

inline Configuration parse_configuration(const std::string& s) {
  if (s == "one-bit") return Configuration::one_bit;
  if (s == "continuous-aligned") return Configuration::continuous_aligned;
  if (s == "all-zero") return Configuration::all_zero;
  throw InputError("unknown configuration '" + s + "' (expected one-bit, continuous-aligned or all-zero)");
}

/// Distances in meters, theta2 in degrees.
struct SweepSpec {
  SweepParameter parameter = SweepParameter::d1;
  double from = 0.0;
  double to = 0.0;
  int steps = 41;
  bool proposed = true;
  bool specular = true;
  Configuration configuration = Configuration::one_bit;
  int reference_scan = kDefaultReferenceScan;
  double mu_bar = 1.0;
  // Configure once at the scene's own placement and keep that grid for every point.
  bool freeze_configuration = false;
  bool parallel = false;

  void validate() const {
    if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) throw InputError("sweep range needs from < to");
    if (steps < 2) throw InputError("sweep needs at least 2 steps");
    if (!proposed && !specular) throw InputError("sweep needs at least one model");
    if (parameter == SweepParameter::theta2) {
      if (from < 0.0 || to >= 90.0) throw InputError("theta2 sweep must stay within [0, 90) degrees");
    } else if (!(from > 0.0)) {
      throw InputError("distance sweep must stay positive");
    }
  }
};

struct SweepRow {
  double value = 0.0;
  std::optional<double> proposed_db;
  std::optional<double> specular_db;
};

inline std::vector<double> sweep_values(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> v(static_cast<std::size_t>(spec.steps));
  const double span = spec.to - spec.from;
  for (int i = 0; i < spec.steps; ++i)
    v[static_cast<std::size_t>(i)] = spec.from + span * static_cast<double>(i) / static_cast<double>(spec.steps - 1);
  v.back() = spec.to;
  return v;
}

inline SceneConfig place(SceneConfig scene, SweepParameter p, double value) {
  switch (p) {
    case SweepParameter::d1: scene.tx.d = value; break;
    case SweepParameter::d2: scene.rx.d = value; break;
    case SweepParameter::theta2: scene.rx.theta = deg_to_rad(value); break;
  }
  return scene;
}

/// Proposed-model power at a placement under the requested configuration.
inline PowerResult configured_power(const SceneConfig& scene, Configuration config, int reference_scan,
                                    const StateGrid* frozen = nullptr) {
  if (frozen) return received_power(scene, *frozen);
  switch (config) {
    case Configuration::one_bit:
      return make_power_result(one_bit_configure(scene, reference_scan).pr, scene.pt);
    case Configuration::continuous_aligned:
      return received_power_continuous(scene, continuous_targets(scene));
    case Configuration::all_zero:
      return received_power(scene, baseline_grid(scene, BaselineKind::all_zero));
  }
  throw InputError("unknown configuration");
}

inline std::vector<SweepRow> run_sweep(const SceneConfig& scene, const SweepSpec& spec) {
  scene.validate();
  const std::vector<double> values = sweep_values(spec);

  std::optional<StateGrid> frozen;
  if (spec.freeze_configuration && spec.proposed) {
    switch (spec.configuration) {
      case Configuration::one_bit: frozen = one_bit_configure(scene, spec.reference_scan).states; break;
      case Configuration::all_zero: frozen = baseline_grid(scene, BaselineKind::all_zero); break;
      case Configuration::continuous_aligned:
        throw InputError("a frozen configuration needs a binary state grid");
    }
  }

  auto evaluate = [&](double value) {
    const SceneConfig at = place(scene, spec.parameter, value);
    at.validate();
    SweepRow row;
    row.value = value;
    if (spec.proposed)
      row.proposed_db =
          configured_power(at, spec.configuration, spec.reference_scan, frozen ? &*frozen : nullptr).attenuation_db;
    if (spec.specular) row.specular_db = specular_power(at, spec.mu_bar).attenuation_db;
    return row;
  };

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  if (spec.parallel) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(values.size());
    for (double v : values) jobs.push_back(std::async(std::launch::async, evaluate, v));
    for (auto& j : jobs) rows.push_back(j.get());
  } else {
    for (double v : values) rows.push_back(evaluate(v));
  }
  return rows;
}

namespace detail {

// Linear interpolation of a column at x; rows are ascending in value.
inline double column_at(std::span<const SweepRow> rows, double x, std::optional<double> SweepRow::*col) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].value == x) return *(rows[i].*col);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (x < rows[i].value) {
      const double t = (x - rows[i - 1].value) / (rows[i].value - rows[i - 1].value);
      return *(rows[i - 1].*col) + t * (*(rows[i].*col) - *(rows[i - 1].*col));
    }
  }
  return *(rows.back().*col);
}

}  // namespace detail

/// |proposed - specular| per row after shifting both curves to 0 dB at the anchor.
inline std::vector<double> divergence_report(std::span<const SweepRow> rows, double anchor) {
  if (rows.empty()) throw InputError("divergence report needs at least one row");
  for (const auto& r : rows)
    if (!r.proposed_db || !r.specular_db) throw InputError("divergence report needs both proposed and specular columns");
  if (!(anchor >= rows.front().value && anchor <= rows.back().value))
    throw InputError("anchor lies outside the swept range");

  const double p0 = detail::column_at(rows, anchor, &SweepRow::proposed_db);
  const double s0 = detail::column_at(rows, anchor, &SweepRow::specular_db);
  std::vector<double> gaps;
  gaps.reserve(rows.size());
  for (const auto& r : rows) gaps.push_back(std::abs((*r.proposed_db - p0) - (*r.specular_db - s0)));
  return gaps;
}

inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// CSV with header `param,value[,proposed_db][,specular_db]`.
inline void write_sweep_csv(std::ostream& out, SweepParameter p, std::span<const SweepRow> rows) {
  const bool has_p = !rows.empty() && rows.front().proposed_db.has_value();
  const bool has_s = !rows.empty() && rows.front().specular_db.has_value();
  out << "param,value";
  if (has_p) out << ",proposed_db";
  if (has_s) out << ",specular_db";
  out << '\n';
  const std::string name = to_string(p);
  for (const auto& r : rows) {
    out << name << ',' << format_g6(r.value);
    if (has_p) out << ',' << format_g6(*r.proposed_db);
    if (has_s) out << ',' << format_g6(*r.specular_db);
    out << '\n';
  }
}

/// Self-contained SVG line chart of the sweep.
inline void write_sweep_svg(std::ostream& out, SweepParameter p, std::span<const SweepRow> rows) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double xmin = rows.front().value, xmax = rows.back().value;
  double ymin = 1e300, ymax = -1e300;
  for (const auto& r : rows) {
    for (auto v : {r.proposed_db, r.specular_db}) {
      if (v && std::isfinite(*v)) {
        ymin = std::min(ymin, *v);
        ymax = std::max(ymax, *v);
      }
    }
  }
  if (!(ymin < ymax)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return T + (ymax - y) / (ymax - ymin) * (H - T - B); };
  auto polyline = [&](std::optional<double> SweepRow::*col, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& r : rows)
      if ((r.*col) && std::isfinite(*(r.*col))) out << format_g6(sx(r.value)) << ',' << format_g6(sy(*(r.*col))) << ' ';
    out << "\"/>\n";
  };

  const std::string xlabel = p == SweepParameter::theta2 ? "theta2 (deg)" : to_string(p) + " (m)";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << L << "\" y=\"" << H - 28 << "\" font-size=\"12\">" << format_g6(xmin) << "</text>\n";
  out << "<text x=\"" << W - R - 30 << "\" y=\"" << H - 28 << "\" font-size=\"12\">" << format_g6(xmax) << "</text>\n";
  out << "<text x=\"" << (W / 2) - 30 << "\" y=\"" << H - 10 << "\" font-size=\"13\">" << xlabel << "</text>\n";
  out << "<text x=\"4\" y=\"" << T + 12 << "\" font-size=\"12\">" << format_g6(ymax) << "</text>\n";
  out << "<text x=\"4\" y=\"" << H - B << "\" font-size=\"12\">" << format_g6(ymin) << "</text>\n";
  out << "<text x=\"4\" y=\"" << H / 2 << "\" font-size=\"13\">dB</text>\n";
  if (rows.front().proposed_db) polyline(&SweepRow::proposed_db, "#1f77b4");
  if (rows.front().specular_db) polyline(&SweepRow::specular_db, "#d62728");
  out << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 << "\" font-size=\"12\" fill=\"#1f77b4\">proposed</text>\n";
  out << "<text x=\"" << L + 10 << "\" y=\"" << T + 32 << "\" font-size=\"12\" fill=\"#d62728\">specular</text>\n";
  out << "</svg>\n";
}

}  // namespace risrcs
