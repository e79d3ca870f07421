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

/*!
 * JSON scene files.
 *
 *   {
 *     "frequency_hz": 5.8e9,
 *     "layout":   {"rows": 20, "cols": 55, "dx_m": 0.0143, "dy_m": 0.01027},
 *     "tx":       {"d_m": 3, "theta_deg": 0, "phi_deg": 0},
 *     "rx":       {"d_m": 2, "theta_deg": 30, "phi_deg": 0},
 *     "antennas": {"gain_dbi": 17.1, "pattern": "isotropic-with-peak", "q": 0},
 *     "eta_r": 0.5429,
 *     "reflection": {"c_m2": 1.42e-5, "a_deg": 90, "b_deg": 180, "state_delta_deg": 180},
 *     "pt_w": 1
 *   }
 *
 * Optional keys: antennas.pattern (isotropic-with-peak), antennas.q (0, needed
 * for cosine-power), reflection.state_delta_deg (180), pt_w (1). Anything else
 * missing or unknown is an error that names the offending key.
 */

#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "risrcs/common.hpp"
#include "risrcs/link.hpp"
#include "risrcs/radiation.hpp"

namespace risrcs {

class SceneError : public InputError {
 public:
  SceneError(const std::string& key, const std::string& what)
      : InputError("scene key '" + key + "': " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw SceneError(prefix + it.key(), "unknown key");
}

inline const json& object_at(const json& parent, const std::string& prefix, const std::string& key) {
  if (!parent.contains(key)) throw SceneError(prefix + key, "missing");
  const json& v = parent.at(key);
  if (!v.is_object()) throw SceneError(prefix + key, "expected an object");
  return v;
}

inline double number_at(const json& parent, const std::string& prefix, const std::string& key) {
  if (!parent.contains(key)) throw SceneError(prefix + key, "missing");
  const json& v = parent.at(key);
  if (!v.is_number()) throw SceneError(prefix + key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SceneError(prefix + key, "must be finite");
  return d;
}

inline double optional_number(const json& parent, const std::string& prefix, const std::string& key, double fallback) {
  return parent.contains(key) ? number_at(parent, prefix, key) : fallback;
}

inline Spherical placement(const json& root, const std::string& name) {
  const json& p = object_at(root, "", name);
  const std::string pre = name + ".";
  reject_unknown(p, pre, {"d_m", "theta_deg", "phi_deg"});
  const double d = number_at(p, pre, "d_m");
  const double theta = number_at(p, pre, "theta_deg");
  const double phi = number_at(p, pre, "phi_deg");
  if (!(d > 0.0)) throw SceneError(pre + "d_m", "distance must be positive");
  if (!(theta >= 0.0 && theta < 90.0))
    throw SceneError(pre + "theta_deg", "zenith angle must lie in [0, 90) (in front of the surface)");
  return {d, deg_to_rad(theta), deg_to_rad(phi)};
}

}  // namespace detail

inline SceneConfig parse_scene_json(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("scene must be a JSON object");
  detail::reject_unknown(root, "",
                         {"frequency_hz", "layout", "tx", "rx", "antennas", "eta_r", "reflection", "pt_w"});

  SceneConfig s;
  s.frequency = detail::number_at(root, "", "frequency_hz");
  if (!(s.frequency > 0.0)) throw SceneError("frequency_hz", "must be positive");

  const json& lay = detail::object_at(root, "", "layout");
  detail::reject_unknown(lay, "layout.", {"rows", "cols", "dx_m", "dy_m"});
  for (const char* key : {"rows", "cols"}) {
    if (lay.contains(key) && !lay.at(key).is_number_integer())
      throw SceneError(std::string("layout.") + key, "expected an integer");
  }
  const double rows = detail::number_at(lay, "layout.", "rows");
  const double cols = detail::number_at(lay, "layout.", "cols");
  if (rows < 1 || rows > 1e6) throw SceneError("layout.rows", "must be a positive count");
  if (cols < 1 || cols > 1e6) throw SceneError("layout.cols", "must be a positive count");
  s.layout.rows = static_cast<int>(rows);
  s.layout.cols = static_cast<int>(cols);
  s.layout.dx = detail::number_at(lay, "layout.", "dx_m");
  s.layout.dy = detail::number_at(lay, "layout.", "dy_m");
  if (!(s.layout.dx > 0.0)) throw SceneError("layout.dx_m", "must be positive");
  if (!(s.layout.dy > 0.0)) throw SceneError("layout.dy_m", "must be positive");

  s.tx = detail::placement(root, "tx");
  s.rx = detail::placement(root, "rx");

  const json& ant = detail::object_at(root, "", "antennas");
  detail::reject_unknown(ant, "antennas.", {"gain_dbi", "pattern", "q"});
  const double gain_db = detail::number_at(ant, "antennas.", "gain_dbi");
  AntennaPattern pattern;
  pattern.peak_gain = db_to_linear(gain_db);
  if (ant.contains("pattern")) {
    if (!ant.at("pattern").is_string()) throw SceneError("antennas.pattern", "expected a string");
    const auto name = ant.at("pattern").get<std::string>();
    if (name == "isotropic-with-peak")
      pattern.kind = PatternKind::isotropic_with_peak;
    else if (name == "cosine-power")
      pattern.kind = PatternKind::cosine_power;
    else
      throw SceneError("antennas.pattern", "expected 'isotropic-with-peak' or 'cosine-power'");
  }
  if (pattern.kind == PatternKind::cosine_power && !ant.contains("q"))
    throw SceneError("antennas.q", "missing (required by cosine-power)");
  pattern.q = detail::optional_number(ant, "antennas.", "q", 0.0);
  if (!(pattern.q >= 0.0)) throw SceneError("antennas.q", "must be non-negative");
  s.tx_pattern = pattern;
  s.rx_pattern = pattern;

  s.eta_r.eta_r = detail::number_at(root, "", "eta_r");
  if (!(s.eta_r.eta_r > 0.0 && s.eta_r.eta_r <= 1.0)) throw SceneError("eta_r", "must lie in (0, 1]");

  const json& refl = detail::object_at(root, "", "reflection");
  detail::reject_unknown(refl, "reflection.", {"c_m2", "a_deg", "b_deg", "state_delta_deg"});
  s.reflection.c = detail::number_at(refl, "reflection.", "c_m2");
  if (!(s.reflection.c >= 0.0)) throw SceneError("reflection.c_m2", "must be non-negative");
  s.reflection.a = deg_to_rad(detail::number_at(refl, "reflection.", "a_deg"));
  s.reflection.b = deg_to_rad(detail::number_at(refl, "reflection.", "b_deg"));
  s.reflection.state_phase_delta =
      deg_to_rad(detail::optional_number(refl, "reflection.", "state_delta_deg", 180.0));

  s.pt = detail::optional_number(root, "", "pt_w", 1.0);
  if (!(s.pt > 0.0)) throw SceneError("pt_w", "must be positive");

  s.sync_reflection();
  s.validate();
  return s;
}

inline SceneConfig parse_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene_json(ss.str());
}

}  // namespace risrcs
