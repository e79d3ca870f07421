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

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "risrcs/common.hpp"
#include "risrcs/geometry.hpp"

namespace risrcs {

/// Binary control state per element, row-major.
class StateGrid {
 public:
  StateGrid() = default;
  StateGrid(int rows, int cols, std::uint8_t fill = 0) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw InputError("state grid must be at least 1x1");
    if (fill > 1) throw InputError("control state must be 0 or 1");
    states_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
  }
  explicit StateGrid(const RisLayout& layout, std::uint8_t fill = 0) : StateGrid(layout.rows, layout.cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return states_.size(); }

  std::uint8_t operator[](std::size_t i) const { return states_[i]; }

  std::uint8_t at(int m, int n) const { return states_[offset(m, n)]; }

  void set(int m, int n, std::uint8_t v) { set_flat(offset(m, n), v); }

  void set_flat(std::size_t i, std::uint8_t v) {
    if (v > 1) throw InputError("control state must be 0 or 1");
    states_.at(i) = v;
  }

  bool matches(const RisLayout& layout) const { return rows_ == layout.rows && cols_ == layout.cols; }

  const std::vector<std::uint8_t>& values() const { return states_; }

  /// Every state inverted.
  StateGrid flipped() const {
    StateGrid g = *this;
    for (auto& s : g.states_) s ^= 1u;
    return g;
  }

  friend bool operator==(const StateGrid&, const StateGrid&) = default;

  /// Row-major lexicographic order.
  friend bool operator<(const StateGrid& l, const StateGrid& r) { return l.states_ < r.states_; }

 private:
  std::size_t offset(int m, int n) const {
    if (m < 1 || m > rows_ || n < 1 || n > cols_)
      throw InputError("state index (" + std::to_string(m) + ", " + std::to_string(n) + ") out of range");
    return static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(n - 1);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> states_;
};

/// M lines of N comma-separated 0/1 values.
inline void write_state_csv(std::ostream& out, const StateGrid& grid) {
  for (int m = 1; m <= grid.rows(); ++m) {
    for (int n = 1; n <= grid.cols(); ++n) {
      if (n > 1) out << ',';
      out << static_cast<int>(grid.at(m, n));
    }
    out << '\n';
  }
}

}  // namespace risrcs
