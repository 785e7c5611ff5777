// Copyright 2026 The hhd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hhd {

/// Uniform Cartesian grid on an axis-aligned box in R^n.
///
/// Nodes sit on both faces of the box, so `spacing(k) = (upper(k) - lower(k)) / (dims(k) - 1)`.
/// Node storage is row-major with the last axis varying fastest.
class GridSpec {
public:
  GridSpec(std::vector<std::size_t> dims, std::vector<double> lower, std::vector<double> upper);

  /// Same node count and bounds on every axis.
  static GridSpec cube(std::size_t n, std::size_t points, double lower, double upper);

  std::size_t n() const noexcept { return dims_.size(); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  std::span<const double> spacing() const noexcept { return spacing_; }
  std::size_t dim(std::size_t axis) const { return dims_.at(axis); }
  std::size_t stride(std::size_t axis) const { return strides_.at(axis); }
  std::size_t node_count() const noexcept { return node_count_; }

  /// Volume of the node-centred cell, the product of the spacings.
  double cell_volume() const noexcept;

  double coordinate(std::size_t axis, std::size_t index) const {
    return lower_[axis] + static_cast<double>(index) * spacing_[axis];
  }

  /// Index of `flat` along `axis`.
  std::size_t index_along(std::size_t flat, std::size_t axis) const noexcept {
    return (flat / strides_[axis]) % dims_[axis];
  }

  std::size_t flat_index(std::span<const std::size_t> index) const;
  void multi_index(std::size_t flat, std::span<std::size_t> out) const;
  void position(std::size_t flat, std::span<double> out) const;

  /// True when every axis index lies in [margin, dim - 1 - margin].
  bool is_interior(std::size_t flat, std::size_t margin) const noexcept;

  /// Halves the spacing on every axis: 2*dims - 1 nodes, same bounds.
  GridSpec refined() const;

  /// Bounds scaled about the box centre by `factor`, spacing kept (node counts grow).
  GridSpec padded(double factor) const;

  std::string describe() const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.dims_ == b.dims_ && a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

private:
  std::vector<std::size_t> dims_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  std::size_t node_count_ = 0;
};

} // namespace hhd
