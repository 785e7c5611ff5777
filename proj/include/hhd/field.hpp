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
#include <functional>
#include <span>
#include <vector>

#include "hhd/grid.hpp"

namespace hhd {

using PointFunction = std::function<double(std::span<const double>)>;

/// One real value per grid node, row-major.
class ScalarField {
public:
  explicit ScalarField(GridSpec grid);
  ScalarField(GridSpec grid, std::vector<double> values);

  /// Evaluates `fn` at every node position.
  static ScalarField sample(const GridSpec& grid, const PointFunction& fn);

  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t flat) const { return values_[flat]; }
  double& operator[](std::size_t flat) { return values_[flat]; }

  /// Value at a multi-index; throws RangeError outside the grid.
  double at(std::span<const std::size_t> node) const { return values_[grid_.flat_index(node)]; }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);

private:
  GridSpec grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

/// n scalar components on one grid.
class VectorField {
public:
  explicit VectorField(const GridSpec& grid);
  VectorField(const GridSpec& grid, std::vector<ScalarField> components);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t n() const noexcept { return components_.size(); }
  const ScalarField& operator[](std::size_t k) const { return components_.at(k); }
  ScalarField& operator[](std::size_t k) { return components_.at(k); }
  std::span<const ScalarField> components() const noexcept { return components_; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);

private:
  GridSpec grid_;
  std::vector<ScalarField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

/// Field of antisymmetric n x n matrices. Only the binomial(n,2) entries with i < j are
/// stored; reads below the diagonal return the negated mirror entry, the diagonal reads 0.
/// Axis indices are zero-based.
class AntisymMatrixField {
public:
  explicit AntisymMatrixField(const GridSpec& grid);
  AntisymMatrixField(const GridSpec& grid, std::vector<ScalarField> upper);

  static std::size_t component_count(std::size_t n) noexcept { return n * (n - 1) / 2; }
  /// Position of (i,j), i < j, in lexicographic order.
  static std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t n() const noexcept { return grid_.n(); }
  std::span<const ScalarField> stored() const noexcept { return upper_; }

  /// Stored slice for i < j; throws RangeError otherwise.
  const ScalarField& upper(std::size_t i, std::size_t j) const;
  ScalarField& upper(std::size_t i, std::size_t j);

  /// Antisymmetric read of entry (i,j) at a flat node index.
  double get(std::size_t i, std::size_t j, std::size_t flat) const;

  /// Entry (i,j) as a full scalar field (negated copy for i > j, zeros for i == j).
  ScalarField entry(std::size_t i, std::size_t j) const;

  AntisymMatrixField& operator+=(const AntisymMatrixField& other);
  AntisymMatrixField& operator-=(const AntisymMatrixField& other);

private:
  void check_pair(std::size_t i, std::size_t j) const;

  GridSpec grid_;
  std::vector<ScalarField> upper_;
};

/// Antisymmetric indexed read at a multi-index node.
double antisym_get(const AntisymMatrixField& m, std::size_t i, std::size_t j, std::span<const std::size_t> node);

/// Source density and rotation density {gamma, rho}.
struct DensityBundle {
  DensityBundle(ScalarField gamma_, AntisymMatrixField rho_);
  ScalarField gamma;
  AntisymMatrixField rho;
};

/// Source potential and rotation potential {G, R}.
struct PotentialBundle {
  PotentialBundle(ScalarField G_, AntisymMatrixField R_);
  ScalarField G;
  AntisymMatrixField R;
};

} // namespace hhd

namespace hhd {

/// Restriction to a sub-box whose nodes lie on the source lattice (same spacing).
/// Throws DataError when `target` is not aligned with `source`.
ScalarField crop(const ScalarField& source, const GridSpec& target);
VectorField crop(const VectorField& source, const GridSpec& target);

/// Zero extension onto a larger aligned grid.
VectorField zero_extend(const VectorField& source, const GridSpec& target);

} // namespace hhd
