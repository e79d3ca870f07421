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

#include "risrcs/common.hpp"

namespace risrcs {

enum class PatternKind {
  isotropic_with_peak,  // constant peak gain in the front half-space
  cosine_power,         // peak * cos^q(boresight angle)
};

struct AntennaPattern {
  PatternKind kind = PatternKind::isotropic_with_peak;
  double peak_gain = 1.0;  // linear
  double q = 0.0;

  void validate() const {
    if (!(peak_gain > 0.0) || !std::isfinite(peak_gain)) throw InputError("antenna peak gain must be positive");
    if (!(q >= 0.0) || !std::isfinite(q)) throw InputError("cosine-power exponent must be non-negative");
  }
};

/// Receive-antenna efficiency in (0, 1].
struct Efficiency {
  double eta_r = 1.0;

  void validate() const {
    if (!(eta_r > 0.0 && eta_r <= 1.0)) throw InputError("antenna efficiency must lie in (0, 1]");
  }
};

/// Linear gain at an angle off boresight. Directions past 90 degrees are behind
/// the antenna and get zero gain.
inline double gain(const AntennaPattern& pattern, double boresight_angle) {
  pattern.validate();
  if (!(boresight_angle >= 0.0)) throw InputError("boresight angle must be non-negative");
  if (boresight_angle > kPi / 2.0) return 0.0;
  switch (pattern.kind) {
    case PatternKind::isotropic_with_peak:
      return pattern.peak_gain;
    case PatternKind::cosine_power:
      if (pattern.q == 0.0) return pattern.peak_gain;
      return pattern.peak_gain * std::pow(std::max(0.0, std::cos(boresight_angle)), pattern.q);
  }
  return 0.0;
}

/// Effective area of an aperture with gain g: g lambda^2 / (4 pi).
inline double area_from_gain(double g, double wavelength) {
  if (!(g >= 0.0)) throw InputError("gain must be non-negative");
  if (!(wavelength > 0.0)) throw InputError("wavelength must be positive");
  return g * wavelength * wavelength / (4.0 * kPi);
}

/// Receive antenna effective area g lambda^2 / (4 pi eta_r). The efficiency sits
/// in the denominator, so eta_r < 1 enlarges the area.
inline double rx_area_from_gain(double g, double wavelength, const Efficiency& eta) {
  eta.validate();
  if (!(g >= 0.0)) throw InputError("gain must be non-negative");
  if (!(wavelength > 0.0)) throw InputError("wavelength must be positive");
  return g * wavelength * wavelength / (4.0 * kPi * eta.eta_r);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
  if (!(x > 0.0)) throw InputError("linear_to_db needs a positive value");
  return 10.0 * std::log10(x);
}

}  // namespace risrcs
