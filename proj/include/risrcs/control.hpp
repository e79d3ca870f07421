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
 * Surface phase configuration.
 *
 * one_bit_configure scans reference angles rho = 2 pi r / R, r = 0..R-1. For
 * each rho every element independently takes the state whose total phase lies
 * angularly closer to rho (state 0 on a tie), and the rho with the largest
 * received power wins. exhaustive_configure enumerates all 2^(M N) grids and
 * serves as the oracle for small surfaces.
 *
 * Power comparisons use |H|^2, so the chosen grid does not depend on Pt. Two
 * candidates whose powers agree to kTieTolerance (relative) are a tie, and the
 * lexicographically smaller grid (row-major, 0 < 1) is kept.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "risrcs/common.hpp"
#include "risrcs/link.hpp"
#include "risrcs/state_grid.hpp"

namespace risrcs {

inline constexpr double kTieTolerance = 1e-12;
inline constexpr std::size_t kExhaustiveLimit = 20;
inline constexpr int kDefaultReferenceScan = 64;

struct ConfigReport {
  StateGrid states;
  double pr = 0.0;              // W, equals received_power(scene, states).pr
  double reference_phase = 0.0; // rad
  std::string method;
};

/// Continuous per-element offsets that rotate every state-0 term to total phase 0.
inline std::vector<double> continuous_targets(const SceneConfig& scene) {
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  std::vector<double> out(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) out[i] = wrap_two_pi(-terms.phase0[i]);
  return out;
}

namespace detail {

struct Candidate {
  double gain = -1.0;  // |H|^2
  StateGrid states;
  double reference = 0.0;
};

// Returns true if (gain, grid) should replace the incumbent.
inline bool better(double gain, const StateGrid& grid, const Candidate& best) {
  if (best.gain < 0.0) return true;
  const double tol = kTieTolerance * std::max(gain, best.gain);
  if (gain > best.gain + tol) return true;
  if (gain < best.gain - tol) return false;
  return grid < best.states;
}

}  // namespace detail

inline ConfigReport one_bit_configure(const SceneConfig& scene, int reference_scan = kDefaultReferenceScan) {
  if (reference_scan < 1) throw InputError("reference_scan must be at least 1");
  const ElementTerms terms = element_terms(scene, scene_paths(scene));

  detail::Candidate best;
  StateGrid grid(scene.layout);
  for (int r = 0; r < reference_scan; ++r) {
    const double rho = kTwoPi * static_cast<double>(r) / static_cast<double>(reference_scan);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double d0 = angular_distance(terms.phase0[i], rho);
      const double d1 = angular_distance(terms.phase1[i], rho);
      grid.set_flat(i, d1 < d0 ? 1 : 0);
    }
    const double g = std::norm(channel_from_terms(terms, grid));
    if (detail::better(g, grid, best)) best = {g, grid, rho};
  }

  ConfigReport report;
  report.states = best.states;
  report.pr = received_power(scene, report.states).pr;
  report.reference_phase = best.reference;
  report.method = "one-bit";
  return report;
}

/// Brute force over every grid; M N must not exceed kExhaustiveLimit.
inline ConfigReport exhaustive_configure(const SceneConfig& scene) {
  const std::size_t count = scene.layout.size();
  if (count > kExhaustiveLimit)
    throw CapacityError("exhaustive search limited to " + std::to_string(kExhaustiveLimit) + " elements, got " +
                        std::to_string(count));
  const ElementTerms terms = element_terms(scene, scene_paths(scene));
  std::vector<std::complex<double>> t0(count), t1(count);
  for (std::size_t i = 0; i < count; ++i) {
    t0[i] = terms.term(i, 0);
    t1[i] = terms.term(i, 1);
  }

  // Element 0 is the most significant bit, so ascending masks visit grids in
  // lexicographic order and the first maximizer found is the smallest one.
  const std::uint64_t total = std::uint64_t{1} << count;
  double best_gain = -1.0;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::complex<double> h{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) h += ((mask >> (count - 1 - i)) & 1u) ? t1[i] : t0[i];
    const double g = std::norm(h);
    if (best_gain < 0.0 || g > best_gain + kTieTolerance * std::max(g, best_gain)) {
      best_gain = g;
      best_mask = mask;
    }
  }

  ConfigReport report;
  report.states = StateGrid(scene.layout);
  for (std::size_t i = 0; i < count; ++i)
    report.states.set_flat(i, static_cast<std::uint8_t>((best_mask >> (count - 1 - i)) & 1u));
  const std::complex<double> h = channel_from_terms(terms, report.states);
  report.pr = received_power(scene, report.states).pr;
  report.reference_phase = wrap_two_pi(std::arg(h));
  report.method = "exhaustive";
  return report;
}

enum class BaselineKind { all_zero, all_one, uniform_random };

inline StateGrid baseline_grid(const SceneConfig& scene, BaselineKind kind, std::uint64_t seed = 0) {
  scene.layout.validate();
  switch (kind) {
    case BaselineKind::all_zero:
      return StateGrid(scene.layout, 0);
    case BaselineKind::all_one:
      return StateGrid(scene.layout, 1);
    case BaselineKind::uniform_random: {
      StateGrid g(scene.layout);
      std::mt19937_64 rng(seed);
      for (std::size_t i = 0; i < g.size(); ++i) g.set_flat(i, static_cast<std::uint8_t>(rng() >> 63));
      return g;
    }
  }
  throw InputError("unknown baseline kind");
}

}  // namespace risrcs
