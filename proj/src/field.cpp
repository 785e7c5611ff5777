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

#include "hhd/field.hpp"

#include <string>

#include "hhd/errors.hpp"

namespace hhd {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) {
    throw DataError("fields live on different grids: " + a.describe() + " vs " + b.describe());
  }
}

} // namespace

ScalarField::ScalarField(GridSpec grid) : grid_(std::move(grid)), values_(grid_.node_count(), 0.0) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) {
    throw DataError("value count " + std::to_string(values_.size()) + " does not match node count " +
                    std::to_string(grid_.node_count()));
  }
}

ScalarField ScalarField::sample(const GridSpec& grid, const PointFunction& fn) {
  ScalarField s(grid);
  std::vector<double> x(grid.n());
  for (std::size_t p = 0; p < grid.node_count(); ++p) {
    grid.position(p, x);
    s.values_[p] = fn(x);
  }
  return s;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t p = 0; p < values_.size(); ++p) {
    values_[p] += other.values_[p];
  }
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t p = 0; p < values_.size(); ++p) {
    values_[p] -= other.values_[p];
  }
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& v : values_) {
    v *= factor;
  }
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

VectorField::VectorField(const GridSpec& grid) : grid_(grid), components_(grid.n(), ScalarField(grid)) {}

VectorField::VectorField(const GridSpec& grid, std::vector<ScalarField> components)
    : grid_(grid), components_(std::move(components)) {
  if (components_.size() != grid_.n()) {
    throw DataError("vector field needs " + std::to_string(grid_.n()) + " components, got " +
                    std::to_string(components_.size()));
  }
  for (const auto& c : components_) {
    require_same_grid(grid_, c.grid());
  }
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < n(); ++k) {
    components_[k] += other.components_[k];
  }
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < n(); ++k) {
    components_[k] -= other.components_[k];
  }
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (auto& c : components_) {
    c *= factor;
  }
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }

AntisymMatrixField::AntisymMatrixField(const GridSpec& grid)
    : grid_(grid), upper_(component_count(grid.n()), ScalarField(grid)) {}

AntisymMatrixField::AntisymMatrixField(const GridSpec& grid, std::vector<ScalarField> upper)
    : grid_(grid), upper_(std::move(upper)) {
  if (upper_.size() != component_count(grid_.n())) {
    throw DataError("antisymmetric field needs " + std::to_string(component_count(grid_.n())) +
                    " stored components, got " + std::to_string(upper_.size()));
  }
  for (const auto& c : upper_) {
    require_same_grid(grid_, c.grid());
  }
}

std::size_t AntisymMatrixField::pair_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(i < j && j < n)) {
    throw RangeError("pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not an upper-triangle index");
  }
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

void AntisymMatrixField::check_pair(std::size_t i, std::size_t j) const {
  if (i >= n() || j >= n()) {
    throw RangeError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range for n = " +
                     std::to_string(n()));
  }
}

const ScalarField& AntisymMatrixField::upper(std::size_t i, std::size_t j) const {
  return upper_[pair_index(n(), i, j)];
}

ScalarField& AntisymMatrixField::upper(std::size_t i, std::size_t j) { return upper_[pair_index(n(), i, j)]; }

double AntisymMatrixField::get(std::size_t i, std::size_t j, std::size_t flat) const {
  check_pair(i, j);
  if (flat >= grid_.node_count()) {
    throw RangeError("node index out of range");
  }
  if (i == j) {
    return 0.0;
  }
  return i < j ? upper_[pair_index(n(), i, j)][flat] : -upper_[pair_index(n(), j, i)][flat];
}

ScalarField AntisymMatrixField::entry(std::size_t i, std::size_t j) const {
  check_pair(i, j);
  if (i == j) {
    return ScalarField(grid_);
  }
  if (i < j) {
    return upper(i, j);
  }
  return -1.0 * upper(j, i);
}

AntisymMatrixField& AntisymMatrixField::operator+=(const AntisymMatrixField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t c = 0; c < upper_.size(); ++c) {
    upper_[c] += other.upper_[c];
  }
  return *this;
}

AntisymMatrixField& AntisymMatrixField::operator-=(const AntisymMatrixField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t c = 0; c < upper_.size(); ++c) {
    upper_[c] -= other.upper_[c];
  }
  return *this;
}

double antisym_get(const AntisymMatrixField& m, std::size_t i, std::size_t j, std::span<const std::size_t> node) {
  return m.get(i, j, m.grid().flat_index(node));
}

DensityBundle::DensityBundle(ScalarField gamma_, AntisymMatrixField rho_)
    : gamma(std::move(gamma_)), rho(std::move(rho_)) {
  require_same_grid(gamma.grid(), rho.grid());
}

PotentialBundle::PotentialBundle(ScalarField G_, AntisymMatrixField R_) : G(std::move(G_)), R(std::move(R_)) {
  require_same_grid(G.grid(), R.grid());
}

} // namespace hhd

#include <cmath>

namespace hhd {

namespace {

// Per-axis node offset of `inner` inside `outer`.
std::vector<std::size_t> lattice_offset(const GridSpec& outer, const GridSpec& inner) {
  if (outer.n() != inner.n()) {
    throw DataError("grids have different dimensions");
  }
  std::vector<std::size_t> off(outer.n());
  for (std::size_t k = 0; k < outer.n(); ++k) {
    const double h = outer.spacing()[k];
    const double shift = (inner.lower()[k] - outer.lower()[k]) / h;
    const double rounded = std::round(shift);
    if (std::abs(inner.spacing()[k] - h) > 1e-9 * h || std::abs(shift - rounded) > 1e-6 || rounded < 0.0 ||
        static_cast<std::size_t>(rounded) + inner.dim(k) > outer.dim(k)) {
      throw DataError("grid " + inner.describe() + " is not aligned inside " + outer.describe());
    }
    off[k] = static_cast<std::size_t>(rounded);
  }
  return off;
}

std::size_t outer_flat(const GridSpec& outer, const GridSpec& inner, const std::vector<std::size_t>& off,
                       std::size_t p) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < inner.n(); ++k) {
    flat += (inner.index_along(p, k) + off[k]) * outer.stride(k);
  }
  return flat;
}

} // namespace

ScalarField crop(const ScalarField& source, const GridSpec& target) {
  const auto off = lattice_offset(source.grid(), target);
  ScalarField out(target);
  for (std::size_t p = 0; p < target.node_count(); ++p) {
    out[p] = source[outer_flat(source.grid(), target, off, p)];
  }
  return out;
}

VectorField crop(const VectorField& source, const GridSpec& target) {
  std::vector<ScalarField> comps;
  for (const auto& c : source.components()) {
    comps.push_back(crop(c, target));
  }
  return VectorField(target, std::move(comps));
}

VectorField zero_extend(const VectorField& source, const GridSpec& target) {
  const auto off = lattice_offset(target, source.grid());
  VectorField out(target);
  for (std::size_t k = 0; k < source.n(); ++k) {
    for (std::size_t p = 0; p < source.grid().node_count(); ++p) {
      out[k][outer_flat(target, source.grid(), off, p)] = source[k][p];
    }
  }
  return out;
}

} // namespace hhd
