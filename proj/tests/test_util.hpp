// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the risrcs test suites.

#pragma once

#include <cmath>
#include <random>

#include "risrcs.hpp"

namespace risrcs::test {

// Random scene with a small surface and transceivers placed in front of it.
inline SceneConfig random_scene(std::mt19937_64& rng, int max_rows, int max_cols) {
  std::uniform_int_distribution<int> rows(1, max_rows), cols(1, max_cols);
  std::uniform_real_distribution<double> pitch(0.005, 0.03), dist(0.5, 20.0), zen(0.0, 75.0), azi(-180.0, 180.0),
      cfloor(0.0, 5e-5), phase(-180.0, 180.0), gain_db(0.0, 20.0), eta(0.3, 1.0), freq(1e9, 30e9);
  SceneConfig s;
  s.frequency = freq(rng);
  s.layout = {rows(rng), cols(rng), pitch(rng), pitch(rng)};
  s.tx = {dist(rng), deg_to_rad(zen(rng)), deg_to_rad(azi(rng))};
  s.rx = {dist(rng), deg_to_rad(zen(rng)), deg_to_rad(azi(rng))};
  s.tx_pattern = {PatternKind::isotropic_with_peak, db_to_linear(gain_db(rng)), 0.0};
  s.rx_pattern = {PatternKind::isotropic_with_peak, db_to_linear(gain_db(rng)), 0.0};
  s.eta_r = {eta(rng)};
  s.reflection.c = cfloor(rng);
  s.reflection.a = deg_to_rad(phase(rng));
  s.reflection.b = deg_to_rad(phase(rng));
  s.reflection.state_phase_delta = kPi;
  s.pt = 1.0;
  s.sync_reflection();
  return s;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace risrcs::test
