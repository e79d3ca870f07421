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
 * Angle-dependent reflection of a single surface element.
 *
 * Both the radar cross section and the reflection phase depend only on the
 * zenith angle of the outgoing direction (incidence is taken along the normal).
 * The phase model describes control state 0; state 1 adds a fixed offset.
 *
 * The fitting routines estimate the free constants of the two models from
 * sampled data: the RCS floor c, and the phase coefficients (a, b).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "risrcs/common.hpp"

namespace risrcs {

struct ReflectionParams {
  double area = 0.0;        // element geometric area dx*dy, m^2
  double wavelength = 0.0;  // m
  double c = 0.0;           // RCS floor, m^2
  double a = 0.0;           // phase amplitude, rad
  double b = 0.0;           // phase offset, rad
  double state_phase_delta = kPi;

  void validate() const {
    if (!(area > 0.0) || !std::isfinite(area)) throw InputError("element area must be positive");
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw InputError("wavelength must be positive");
    if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("RCS floor c must be non-negative");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(state_phase_delta))
      throw InputError("phase parameters must be finite");
  }
};

struct ReflectionSample {
  double theta_r = 0.0;
  std::optional<double> sigma;  // m^2
  std::optional<double> phase;  // rad, unwrapped
};

namespace detail {

// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

inline void check_state(int state) {
  if (state != 0 && state != 1) throw InputError("control state must be 0 or 1");
}

}  // namespace detail

/// Specular lobe of a flat plate of area A, without the floor term.
inline double rcs_main_lobe(double theta_r, double area, double wavelength) {
  const double k = kTwoPi / wavelength;
  const double s = detail::sinc(k * std::sqrt(area) * std::sin(theta_r));
  return 4.0 * kPi * area * area / (wavelength * wavelength) * s * s;
}

/// Element radar cross section, m^2. Even in theta_r; defined for |theta_r| <= pi/2.
inline double rcs(double theta_r, const ReflectionParams& p) {
  p.validate();
  if (!(std::abs(theta_r) <= kPi / 2.0)) throw InputError("zenith angle outside [0, pi/2)");
  return rcs_main_lobe(theta_r, p.area, p.wavelength) + p.c;
}

/// Reflection phase in [0, 2pi).
inline double phase_shift(double theta_r, int state, const ReflectionParams& p) {
  p.validate();
  detail::check_state(state);
  if (!(std::abs(theta_r) <= kPi / 2.0)) throw InputError("zenith angle outside [0, pi/2]");
  double phi = p.a * std::cos(theta_r) + p.b;
  if (state == 1) phi += p.state_phase_delta;
  return wrap_two_pi(phi);
}

struct ReflectionCoefficient {
  std::complex<double> gamma;
  double mu = 0.0;            // amplitude after clamping to 1
  double mu_unclamped = 0.0;  // sigma / sqrt(ae_t ae_r)
  double phase = 0.0;
  bool clamped = false;       // set when the passive bound was enforced
};

/// Complex reflection coefficient recovered from the RCS and the element
/// effective areas toward TX and RX.
inline ReflectionCoefficient reflection_coefficient(double theta_r, int state, const ReflectionParams& p,
                                                    double ae_t, double ae_r) {
  if (!(ae_t > 0.0) || !(ae_r > 0.0)) throw InputError("effective areas must be positive");
  ReflectionCoefficient rc;
  rc.mu_unclamped = rcs(theta_r, p) / std::sqrt(ae_t * ae_r);
  rc.clamped = rc.mu_unclamped > 1.0;
  rc.mu = rc.clamped ? 1.0 : rc.mu_unclamped;
  rc.phase = phase_shift(theta_r, state, p);
  rc.gamma = std::polar(rc.mu, rc.phase);
  return rc;
}

struct FitResiduals {
  std::size_t count = 0;
  double rms = 0.0;
  double max_abs = 0.0;
};

struct RcsFloorFit {
  double c = 0.0;
  FitResiduals residuals;
};

struct PhaseFit {
  double a = 0.0;
  double b = 0.0;
  FitResiduals residuals;
};

namespace detail {

inline FitResiduals summarize(const std::vector<double>& r) {
  FitResiduals out;
  out.count = r.size();
  double ss = 0.0;
  for (double v : r) {
    ss += v * v;
    out.max_abs = std::max(out.max_abs, std::abs(v));
  }
  out.rms = r.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(r.size()));
  return out;
}

}  // namespace detail

/// Least-squares RCS floor with the main lobe held fixed. The estimate is the
/// mean of sigma_i minus the main lobe at theta_i.
inline RcsFloorFit fit_rcs_floor(std::span<const ReflectionSample> samples, double area, double wavelength) {
  if (!(area > 0.0) || !(wavelength > 0.0)) throw InputError("area and wavelength must be positive");
  std::vector<double> excess;
  for (const auto& s : samples) {
    if (!s.sigma) continue;
    excess.push_back(*s.sigma - rcs_main_lobe(s.theta_r, area, wavelength));
  }
  if (excess.empty()) throw InputError("no RCS samples to fit");

  double sum = 0.0;
  for (double e : excess) sum += e;
  RcsFloorFit fit;
  fit.c = sum / static_cast<double>(excess.size());
  for (double& e : excess) e -= fit.c;
  fit.residuals = detail::summarize(excess);
  return fit;
}

/// Linear least squares of phase against cos(theta_r). Phases must already be
/// unwrapped; a jump of more than pi between angle-adjacent samples is treated
/// as a branch crossing and rejected.
inline PhaseFit fit_phase(std::span<const ReflectionSample> samples) {
  std::vector<std::pair<double, double>> pts;  // (theta, phase)
  for (const auto& s : samples)
    if (s.phase) pts.emplace_back(s.theta_r, *s.phase);
  if (pts.size() < 2) throw InputError("phase fit needs at least two samples");

  auto sorted = pts;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (std::abs(sorted[i].second - sorted[i - 1].second) > kPi)
      throw InputError("phase samples cross a 2pi branch; unwrap before fitting");

  const double n = static_cast<double>(pts.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [t, y] : pts) {
    mx += std::cos(t);
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, scale = 0.0;
  for (const auto& [t, y] : pts) {
    const double dx = std::cos(t) - mx;
    sxx += dx * dx;
    sxy += dx * (y - my);
    scale = std::max(scale, std::abs(std::cos(t)));
  }
  if (sxx <= 1e-24 * std::max(1.0, scale * scale) * n)
    throw RankDeficiencyError("phase fit is rank deficient: all samples share the same cos(theta)");

  PhaseFit fit;
  fit.a = sxy / sxx;
  fit.b = my - fit.a * mx;
  std::vector<double> r;
  r.reserve(pts.size());
  for (const auto& [t, y] : pts) r.push_back(y - (fit.a * std::cos(t) + fit.b));
  fit.residuals = detail::summarize(r);
  return fit;
}

/// Reads samples from CSV with header `theta_deg,sigma_m2,phase_deg`. An empty
/// field marks an absent value.
inline std::vector<ReflectionSample> read_reflection_csv(std::istream& in) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  auto split = [&](const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(trim(f));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
  };
  auto number = [](const std::string& s, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !std::isfinite(v))
      throw InputError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
  };

  std::string line;
  if (!std::getline(in, line)) throw InputError("reflection CSV is empty");
  const auto header = split(trim(line));
  if (header != std::vector<std::string>{"theta_deg", "sigma_m2", "phase_deg"})
    throw InputError("reflection CSV header must be 'theta_deg,sigma_m2,phase_deg'");

  std::vector<ReflectionSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line));
    if (f.size() != 3) throw InputError("line " + std::to_string(line_no) + ": expected 3 fields");
    ReflectionSample s;
    const double theta_deg = number(f[0], line_no);
    if (!(theta_deg >= 0.0 && theta_deg < 90.0))
      throw InputError("line " + std::to_string(line_no) + ": theta_deg outside [0, 90)");
    s.theta_r = deg_to_rad(theta_deg);
    if (!f[1].empty()) s.sigma = number(f[1], line_no);
    if (!f[2].empty()) s.phase = deg_to_rad(number(f[2], line_no));
    if (!s.sigma && !s.phase) throw InputError("line " + std::to_string(line_no) + ": no sigma or phase value");
    samples.push_back(s);
  }
  return samples;
}

}  // namespace risrcs
