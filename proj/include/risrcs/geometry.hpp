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
 * Surface geometry.
 *
 * The surface lies in the x-y plane with its geometric center at the origin and
 * rows parallel to the x axis. Row index m runs top to bottom (+y to -y), column
 * index n runs left to right (-x to +x). Indices are 1-based at the public
 * interface; grids are stored row-major.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "risrcs/common.hpp"

namespace risrcs {

struct RisLayout {
  int rows = 1;      // M
  int cols = 1;      // N
  double dx = 0.0;   // element length along x, m
  double dy = 0.0;   // element width along y, m

  std::size_t size() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
  double element_area() const { return dx * dy; }

  void validate() const {
    if (rows < 1 || cols < 1) throw InputError("layout must have at least one row and one column");
    if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
      throw InputError("element pitch dx, dy must be positive and finite");
  }

  std::size_t index(int m, int n) const {
    if (m < 1 || m > rows || n < 1 || n > cols)
      throw InputError("element index (" + std::to_string(m) + ", " + std::to_string(n) + ") out of range");
    return static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(n - 1);
  }
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator-(const Point3& a) { return {-a.x, -a.y, -a.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const Point3& o) const { return x * o.x + y * o.y + z * o.z; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

/// Distance, zenith angle from +z, azimuth from +x (radians).
struct Spherical {
  double d = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  void validate() const {
    if (!(d >= 0.0) || !std::isfinite(d)) throw InputError("spherical distance must be non-negative");
    if (!(theta >= 0.0 && theta <= kPi)) throw InputError("zenith angle must lie in [0, pi]");
    if (!std::isfinite(phi)) throw InputError("azimuth must be finite");
  }
};

/// Per-element path geometry between a transmitter, the surface and a receiver.
struct PathGrid {
  RisLayout layout;
  Point3 tx;
  Point3 rx;
  double wavelength = 0.0;
  std::vector<Point3> position;  // element centers
  std::vector<double> d_t;       // element -> TX distance
  std::vector<double> d_r;       // element -> RX distance
  std::vector<double> theta_t;   // zenith of element -> TX direction
  std::vector<double> phi_t;
  std::vector<double> theta_r;   // zenith of element -> RX direction
  std::vector<double> phi_r;
  std::vector<double> phase;     // propagation phase 2pi/lambda (d_t + d_r), unwrapped

  std::size_t size() const { return d_t.size(); }
};

inline Point3 element_position(int m, int n, const RisLayout& layout) {
  layout.validate();
  (void)layout.index(m, n);
  const double x = (static_cast<double>(n) - (layout.cols + 1) / 2.0) * layout.dx;
  const double y = ((layout.rows + 1) / 2.0 - static_cast<double>(m)) * layout.dy;
  return {x, y, 0.0};
}

inline Point3 spherical_to_cartesian(const Spherical& s) {
  s.validate();
  const double st = std::sin(s.theta);
  return {s.d * st * std::cos(s.phi), s.d * st * std::sin(s.phi), s.d * std::cos(s.theta)};
}

/// Azimuth is reported in (-pi, pi]; points on the z axis get phi = 0.
inline Spherical cartesian_to_spherical(const Point3& p) {
  if (!p.finite()) throw InputError("point must be finite");
  const double d = p.norm();
  if (d == 0.0) throw InputError("direction of the origin is undefined");
  const double ct = std::clamp(p.z / d, -1.0, 1.0);
  const double theta = std::acos(ct);
  double phi = 0.0;
  if (p.x != 0.0 || p.y != 0.0) {
    phi = std::atan2(p.y, p.x);
    if (phi <= -kPi) phi = kPi;
  }
  return {d, theta, phi};
}

inline PathGrid path_geometry(const RisLayout& layout, const Point3& tx, const Point3& rx, double wavelength) {
  layout.validate();
  if (!tx.finite() || !rx.finite()) throw InputError("transceiver positions must be finite");
  if (!(tx.z > 0.0)) throw InputError("transmitter must be in front of the surface (z > 0)");
  if (!(rx.z > 0.0)) throw InputError("receiver must be in front of the surface (z > 0)");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) throw InputError("wavelength must be positive");

  PathGrid g;
  g.layout = layout;
  g.tx = tx;
  g.rx = rx;
  g.wavelength = wavelength;
  const std::size_t count = layout.size();
  g.position.reserve(count);
  g.d_t.reserve(count);
  g.d_r.reserve(count);
  g.theta_t.reserve(count);
  g.phi_t.reserve(count);
  g.theta_r.reserve(count);
  g.phi_r.reserve(count);
  g.phase.reserve(count);

  const double k = kTwoPi / wavelength;
  for (int m = 1; m <= layout.rows; ++m) {
    for (int n = 1; n <= layout.cols; ++n) {
      const Point3 p = element_position(m, n, layout);
      const Spherical to_tx = cartesian_to_spherical(tx - p);
      const Spherical to_rx = cartesian_to_spherical(rx - p);
      g.position.push_back(p);
      g.d_t.push_back(to_tx.d);
      g.d_r.push_back(to_rx.d);
      g.theta_t.push_back(to_tx.theta);
      g.phi_t.push_back(to_tx.phi);
      g.theta_r.push_back(to_rx.theta);
      g.phi_r.push_back(to_rx.phi);
      g.phase.push_back(k * (to_tx.d + to_rx.d));
    }
  }
  return g;
}

enum class FieldConvention {
  effective,   // 2 M N dx dy / lambda
  as_printed,  // 2 M N dx dy / lambda^2
};

/// Near/far field boundary of the aperture, meters.
inline double fraunhofer_distance(const RisLayout& layout, double wavelength,
                                  FieldConvention convention = FieldConvention::effective) {
  layout.validate();
  if (!(wavelength > 0.0)) throw InputError("wavelength must be positive");
  const double numerator = 2.0 * static_cast<double>(layout.size()) * layout.dx * layout.dy;
  return convention == FieldConvention::effective ? numerator / wavelength
                                                  : numerator / (wavelength * wavelength);
}

}  // namespace risrcs
