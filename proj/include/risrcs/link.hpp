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
 * Received power of a surface-assisted link.
 *
 * The proposed model sums, coherently over all elements,
 *
 *   sqrt(Gt Gr) sigma_mn exp(j (phi_mn + Phi_mn)) / (d_t d_r)
 *
 * and scales the squared magnitude by Pt / (16 pi^2 eta_r). The composite
 * channel H carries the 1 / (4 pi sqrt(eta_r)) factor so that Pr = Pt |H|^2.
 *
 * The specular baseline treats the surface as a mirror: power falls with the
 * square of the unfolded path length d1 + d2.
 *
 * Accumulation is sequential in row-major order unless SumMode::parallel_tree
 * is requested; the tree mode partitions the grid into fixed-size blocks and
 * combines block sums pairwise in a fixed order, so its result depends only on
 * the element count, never on thread scheduling.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "risrcs/common.hpp"
#include "risrcs/geometry.hpp"
#include "risrcs/radiation.hpp"
#include "risrcs/reflection.hpp"
#include "risrcs/state_grid.hpp"

namespace risrcs {

struct SceneConfig {
  double frequency = 0.0;  // Hz
  RisLayout layout;
  Spherical tx;  // seen from the surface center
  Spherical rx;
  AntennaPattern tx_pattern;
  AntennaPattern rx_pattern;
  Efficiency eta_r;
  ReflectionParams reflection;  // area and wavelength normally match layout and frequency
  double pt = 1.0;              // W

  double wavelength() const { return wavelength_from_frequency(frequency); }
  Point3 tx_position() const { return spherical_to_cartesian(tx); }
  Point3 rx_position() const { return spherical_to_cartesian(rx); }

  void validate() const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw InputError("frequency must be positive");
    if (!(pt > 0.0) || !std::isfinite(pt)) throw InputError("transmit power must be positive");
    layout.validate();
    tx.validate();
    rx.validate();
    if (!(tx.d > 0.0) || !(tx.theta < kPi / 2.0)) throw InputError("transmitter must be in front of the surface");
    if (!(rx.d > 0.0) || !(rx.theta < kPi / 2.0)) throw InputError("receiver must be in front of the surface");
    tx_pattern.validate();
    rx_pattern.validate();
    eta_r.validate();
    reflection.validate();
  }

  /// Copies area and wavelength into the reflection parameters.
  void sync_reflection() {
    reflection.area = layout.element_area();
    reflection.wavelength = wavelength();
  }
};

/// The measurement setup: 5.8 GHz, 17.1 dBi horns, eta_r = 54.29 %, 20 x 55
/// elements of 14.3 mm x 10.27 mm, RCS floor 1.42e-5 m^2, phase a = 90 deg,
/// b = 180 deg. Placement defaults to d1 = 3 m, theta1 = 0, d2 = 2 m, theta2 = 30 deg.
inline SceneConfig measurement_scene() {
  SceneConfig s;
  s.frequency = 5.8e9;
  s.layout = {20, 55, 0.0143, 0.01027};
  s.tx = {3.0, 0.0, 0.0};
  s.rx = {2.0, deg_to_rad(30.0), 0.0};
  s.tx_pattern = {PatternKind::isotropic_with_peak, db_to_linear(17.1), 0.0};
  s.rx_pattern = s.tx_pattern;
  s.eta_r = {0.5429};
  s.reflection.c = 1.42e-5;
  s.reflection.a = deg_to_rad(90.0);
  s.reflection.b = deg_to_rad(180.0);
  s.reflection.state_phase_delta = kPi;
  s.pt = 1.0;
  s.sync_reflection();
  return s;
}

inline PathGrid scene_paths(const SceneConfig& scene) {
  scene.validate();
  return path_geometry(scene.layout, scene.tx_position(), scene.rx_position(), scene.wavelength());
}

/// Antenna gains toward element i. Both antennas point at the surface center.
struct ElementGains {
  double tx = 0.0;
  double rx = 0.0;
};

inline ElementGains element_gains(const SceneConfig& scene, const PathGrid& paths, std::size_t i) {
  auto off_boresight = [](const Point3& antenna, const Point3& target) {
    const Point3 boresight = -antenna;  // toward the origin
    const Point3 ray = target - antenna;
    const double c = boresight.dot(ray) / (boresight.norm() * ray.norm());
    return std::acos(std::clamp(c, -1.0, 1.0));
  };
  ElementGains g;
  g.tx = scene.tx_pattern.kind == PatternKind::isotropic_with_peak
             ? scene.tx_pattern.peak_gain
             : gain(scene.tx_pattern, off_boresight(paths.tx, paths.position[i]));
  g.rx = scene.rx_pattern.kind == PatternKind::isotropic_with_peak
             ? scene.rx_pattern.peak_gain
             : gain(scene.rx_pattern, off_boresight(paths.rx, paths.position[i]));
  return g;
}

/// Projected-aperture effective area of an element at a zenith angle.
inline double element_effective_area(const RisLayout& layout, double zenith) {
  return layout.element_area() * std::max(0.0, std::cos(zenith));
}

/// Power delivered to the receiver through element (m, n) alone, without any
/// reflection loss, using the projected-aperture element area.
inline double element_power(const SceneConfig& scene, int m, int n, const PathGrid& paths) {
  const std::size_t i = scene.layout.index(m, n);
  if (paths.size() != scene.layout.size()) throw InputError("path grid does not match the scene layout");
  const ElementGains g = element_gains(scene, paths, i);
  const double ae_t = element_effective_area(scene.layout, paths.theta_t[i]);
  const double ae_r = element_effective_area(scene.layout, paths.theta_r[i]);
  const double den = 4.0 * kPi * paths.d_t[i] * paths.d_r[i];
  return scene.pt * g.tx * g.rx * ae_t * ae_r / (den * den * scene.eta_r.eta_r);
}

/// Per-element channel contributions, split into magnitude and the total phase
/// for each control state. Shared by the power evaluation and the configuration
/// search so both see identical arithmetic.
struct ElementTerms {
  std::vector<double> magnitude;  // sqrt(Gt Gr) sigma / (4 pi sqrt(eta_r) d_t d_r)
  std::vector<double> phase0;     // phi(state 0) + Phi, reduced to [0, 2pi)
  std::vector<double> phase1;     // phi(state 1) + Phi, reduced to [0, 2pi)
  std::vector<double> sigma;

  std::size_t size() const { return magnitude.size(); }

  std::complex<double> term(std::size_t i, std::uint8_t state) const {
    return std::polar(magnitude[i], state ? phase1[i] : phase0[i]);
  }
};

inline ElementTerms element_terms(const SceneConfig& scene, const PathGrid& paths) {
  const std::size_t count = paths.size();
  if (count != scene.layout.size()) throw InputError("path grid does not match the scene layout");
  ElementTerms t;
  t.magnitude.resize(count);
  t.phase0.resize(count);
  t.phase1.resize(count);
  t.sigma.resize(count);
  const double norm = 4.0 * kPi * std::sqrt(scene.eta_r.eta_r);
  for (std::size_t i = 0; i < count; ++i) {
    const ElementGains g = element_gains(scene, paths, i);
    const double theta = paths.theta_r[i];
    t.sigma[i] = rcs(theta, scene.reflection);
    t.magnitude[i] = std::sqrt(g.tx * g.rx) * t.sigma[i] / (norm * paths.d_t[i] * paths.d_r[i]);
    // Reduce before summing: Phi reaches thousands of radians, and carrying it
    // unreduced costs several digits in every later phase addition.
    const double propagation = wrap_two_pi(paths.phase[i]);
    t.phase0[i] = wrap_two_pi(phase_shift(theta, 0, scene.reflection) + propagation);
    t.phase1[i] = wrap_two_pi(phase_shift(theta, 1, scene.reflection) + propagation);
  }
  return t;
}

enum class SumMode {
  sequential,     // row-major, one accumulator
  parallel_tree,  // fixed-size blocks, pairwise combination
};

namespace detail {

inline constexpr std::size_t kTreeBlock = 256;

template <typename TermFn>
std::complex<double> accumulate(std::size_t count, TermFn&& term, SumMode mode) {
  if (mode == SumMode::sequential || count <= kTreeBlock) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) acc += term(i);
    return acc;
  }
  const std::size_t blocks = (count + kTreeBlock - 1) / kTreeBlock;
  std::vector<std::future<std::complex<double>>> parts;
  parts.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    parts.push_back(std::async(std::launch::async, [&term, b, count] {
      std::complex<double> acc{0.0, 0.0};
      const std::size_t end = std::min(count, (b + 1) * kTreeBlock);
      for (std::size_t i = b * kTreeBlock; i < end; ++i) acc += term(i);
      return acc;
    }));
  }
  std::vector<std::complex<double>> level;
  level.reserve(blocks);
  for (auto& f : parts) level.push_back(f.get());
  while (level.size() > 1) {
    std::vector<std::complex<double>> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

inline double to_db(double ratio) {
  return ratio > 0.0 ? 10.0 * std::log10(ratio) : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// H for a binary state grid, given precomputed terms.
inline std::complex<double> channel_from_terms(const ElementTerms& terms, const StateGrid& states,
                                               SumMode mode = SumMode::sequential) {
  if (states.size() != terms.size()) throw InputError("state grid shape does not match the element count");
  return detail::accumulate(terms.size(), [&](std::size_t i) { return terms.term(i, states[i]); }, mode);
}

/// H with continuous per-element phase offsets applied on top of state 0.
inline std::complex<double> channel_from_offsets(const ElementTerms& terms, std::span<const double> offsets,
                                                 SumMode mode = SumMode::sequential) {
  if (offsets.size() != terms.size()) throw InputError("offset grid does not match the element count");
  return detail::accumulate(
      terms.size(), [&](std::size_t i) { return std::polar(terms.magnitude[i], terms.phase0[i] + offsets[i]); },
      mode);
}

struct PowerResult {
  double pr = 0.0;              // W
  double attenuation_db = 0.0;  // 10 log10(pr / pt)
  std::optional<std::vector<std::complex<double>>> per_element;
};

inline PowerResult make_power_result(double pr, double pt) {
  PowerResult r;
  r.pr = pr;
  r.attenuation_db = detail::to_db(pr / pt);
  return r;
}

inline void check_states(const SceneConfig& scene, const StateGrid& states) {
  if (!states.matches(scene.layout)) throw InputError("state grid shape does not match the surface layout");
}

/// Composite channel sum_mn h_mn g_mn Gamma_mn; Pt |H|^2 equals the received power.
inline std::complex<double> composite_channel(const SceneConfig& scene, const StateGrid& states,
                                              SumMode mode = SumMode::sequential) {
  check_states(scene, states);
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  return channel_from_terms(terms, states, mode);
}

inline PowerResult received_power(const SceneConfig& scene, const StateGrid& states,
                                  SumMode mode = SumMode::sequential, bool keep_terms = false) {
  check_states(scene, states);
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  const std::complex<double> h = channel_from_terms(terms, states, mode);
  PowerResult r = make_power_result(scene.pt * std::norm(h), scene.pt);
  if (keep_terms) {
    std::vector<std::complex<double>> diag(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) diag[i] = terms.term(i, states[i]);
    r.per_element = std::move(diag);
  }
  return r;
}

/// Received power with continuous phase offsets (radians, row-major) added to
/// the state-0 reflection phase of each element.
inline PowerResult received_power_continuous(const SceneConfig& scene, std::span<const double> offsets,
                                             SumMode mode = SumMode::sequential) {
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  const std::complex<double> h = channel_from_offsets(terms, offsets, mode);
  return make_power_result(scene.pt * std::norm(h), scene.pt);
}

/// Largest power any phase assignment can reach: all terms co-phased.
inline double aligned_power_bound(const SceneConfig& scene) {
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  double s = 0.0;
  for (double m : terms.magnitude) s += m;
  return scene.pt * s * s;
}

/// Plane-mirror baseline at boresight gains.
inline PowerResult specular_power(const SceneConfig& scene, double mu_bar = 1.0) {
  scene.validate();
  if (!(mu_bar > 0.0 && mu_bar <= 1.0)) throw InputError("mean reflection amplitude must lie in (0, 1]");
  const double x = scene.wavelength() * mu_bar / (4.0 * kPi * (scene.tx.d + scene.rx.d));
  const double pr = scene.pt * scene.tx_pattern.peak_gain * scene.rx_pattern.peak_gain * x * x;
  return make_power_result(pr, scene.pt);
}

inline double mean_reflection_amplitude(std::span<const double> mu) {
  if (mu.empty()) throw InputError("mean reflection amplitude of an empty grid");
  double s = 0.0;
  for (double v : mu) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("reflection amplitude outside [0, 1]");
    s += v;
  }
  return s / static_cast<double>(mu.size());
}

/// Per-element reflection amplitudes for a state grid, using the
/// projected-aperture effective areas. Clamped entries are counted in
/// `clamped`.
struct AmplitudeGrid {
  std::vector<double> mu;
  std::size_t clamped = 0;
};

inline AmplitudeGrid reflection_amplitudes(const SceneConfig& scene, const StateGrid& states) {
  check_states(scene, states);
  const PathGrid paths = scene_paths(scene);
  AmplitudeGrid out;
  out.mu.reserve(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const double ae_t = element_effective_area(scene.layout, paths.theta_t[i]);
    const double ae_r = element_effective_area(scene.layout, paths.theta_r[i]);
    const auto rc = reflection_coefficient(paths.theta_r[i], states[i], scene.reflection, ae_t, ae_r);
    out.mu.push_back(rc.mu);
    if (rc.clamped) ++out.clamped;
  }
  return out;
}

}  // namespace risrcs
