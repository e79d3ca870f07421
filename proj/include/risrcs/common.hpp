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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risrcs {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

/// Invalid argument or violated precondition.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Request exceeds a fixed computational guard (e.g. exhaustive enumeration).
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// Least-squares system without a unique solution.
class RankDeficiencyError : public std::domain_error {
 public:
  explicit RankDeficiencyError(const std::string& what) : std::domain_error(what) {}
};

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

/// Wavelength in meters for a carrier frequency in Hz.
inline double wavelength_from_frequency(double frequency_hz) {
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
    throw InputError("frequency must be positive and finite");
  return kSpeedOfLight / frequency_hz;
}

/// Reduce an angle into [0, 2pi).
inline double wrap_two_pi(double rad) {
  double r = std::fmod(rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Smallest absolute angular separation of two angles, in [0, pi].
inline double angular_distance(double a, double b) {
  const double d = wrap_two_pi(a - b);
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace risrcs
