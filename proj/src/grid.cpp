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

#include "hhd/grid.hpp"

#include <cmath>
#include <sstream>

#include "hhd/errors.hpp"

namespace hhd {

GridSpec::GridSpec(std::vector<std::size_t> dims, std::vector<double> lower, std::vector<double> upper)
    : dims_(std::move(dims)), lower_(std::move(lower)), upper_(std::move(upper)) {
  const std::size_t n = dims_.size();
  if (n < 2) {
    throw UnsupportedDimension("grid dimension must be at least 2, got " + std::to_string(n));
  }
  if (lower_.size() != n || upper_.size() != n) {
    throw std::invalid_argument("grid bounds must have one entry per axis");
  }
  spacing_.resize(n);
  strides_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (dims_[k] < 3) {
      throw std::invalid_argument("every axis needs at least 3 nodes (axis " + std::to_string(k + 1) + ")");
    }
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) || !(upper_[k] > lower_[k])) {
      throw std::invalid_argument("axis " + std::to_string(k + 1) + " needs finite bounds with upper > lower");
    }
    spacing_[k] = (upper_[k] - lower_[k]) / static_cast<double>(dims_[k] - 1);
  }
  node_count_ = 1;
  for (std::size_t k = n; k-- > 0;) {
    strides_[k] = node_count_;
    node_count_ *= dims_[k];
  }
}

GridSpec GridSpec::cube(std::size_t n, std::size_t points, double lower, double upper) {
  return GridSpec(std::vector<std::size_t>(n, points), std::vector<double>(n, lower), std::vector<double>(n, upper));
}

double GridSpec::cell_volume() const noexcept {
  double v = 1.0;
  for (double h : spacing_) {
    v *= h;
  }
  return v;
}

std::size_t GridSpec::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != n()) {
    throw RangeError("multi-index has wrong rank");
  }
  std::size_t flat = 0;
  for (std::size_t k = 0; k < n(); ++k) {
    if (index[k] >= dims_[k]) {
      throw RangeError("node index out of range on axis " + std::to_string(k + 1));
    }
    flat += index[k] * strides_[k];
  }
  return flat;
}

void GridSpec::multi_index(std::size_t flat, std::span<std::size_t> out) const {
  for (std::size_t k = 0; k < n(); ++k) {
    out[k] = index_along(flat, k);
  }
}

void GridSpec::position(std::size_t flat, std::span<double> out) const {
  for (std::size_t k = 0; k < n(); ++k) {
    out[k] = coordinate(k, index_along(flat, k));
  }
}

bool GridSpec::is_interior(std::size_t flat, std::size_t margin) const noexcept {
  for (std::size_t k = 0; k < n(); ++k) {
    const std::size_t i = index_along(flat, k);
    if (i < margin || i + margin >= dims_[k]) {
      return false;
    }
  }
  return true;
}

GridSpec GridSpec::refined() const {
  std::vector<std::size_t> dims(dims_);
  for (auto& d : dims) {
    d = 2 * d - 1;
  }
  return GridSpec(std::move(dims), lower_, upper_);
}

GridSpec GridSpec::padded(double factor) const {
  if (!(factor >= 1.0)) {
    throw std::invalid_argument("padding factor must be >= 1");
  }
  std::vector<std::size_t> dims(dims_);
  std::vector<double> lo(lower_);
  std::vector<double> hi(upper_);
  for (std::size_t k = 0; k < n(); ++k) {
    // Extra nodes per side, rounded so the original nodes stay on the padded lattice.
    const auto extra = static_cast<std::size_t>(std::ceil(0.5 * (factor - 1.0) * static_cast<double>(dims_[k] - 1)));
    dims[k] += 2 * extra;
    lo[k] -= static_cast<double>(extra) * spacing_[k];
    hi[k] += static_cast<double>(extra) * spacing_[k];
  }
  return GridSpec(std::move(dims), std::move(lo), std::move(hi));
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < n(); ++k) {
    os << (k ? "x" : "") << dims_[k];
  }
  os << " on ";
  for (std::size_t k = 0; k < n(); ++k) {
    os << (k ? "," : "") << "[" << lower_[k] << "," << upper_[k] << "]";
  }
  return os.str();
}

} // namespace hhd
