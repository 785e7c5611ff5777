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
#include <vector>

#include "hhd/diff_ops.hpp"
#include "hhd/field.hpp"

namespace hhd {

/// Levi-Civita symbol of a zero-based index sequence of length n over {0..n-1}:
/// +1 for an even permutation, -1 for an odd one, 0 when an index repeats or is out of range.
int levi_civita(std::span<const std::size_t> indices);

/// Rank n-2 tensor field with all n^(n-2) components stored (indices e_1..e_{n-2}, zero-based,
/// flattened with the last index fastest). Only built for n <= 4.
class LeviCivitaTensor {
public:
  LeviCivitaTensor(const GridSpec& grid, std::vector<ScalarField> components);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t n() const noexcept { return grid_.n(); }
  std::size_t rank() const noexcept { return grid_.n() - 2; }
  std::size_t size() const noexcept { return components_.size(); }

  std::size_t flat(std::span<const std::size_t> e) const;
  const ScalarField& operator[](std::size_t flat_index) const { return components_.at(flat_index); }
  const ScalarField& at(std::span<const std::size_t> e) const { return components_.at(flat(e)); }

private:
  GridSpec grid_;
  std::vector<ScalarField> components_;
};

inline constexpr std::size_t kMaxLeviCivitaDimension = 4;

/// Rotation of a vector field as the full Levi-Civita tensor,
///     T_e = sum_{l,m} eps(e,l,m) d f_m / d x_l,
/// which reduces to d f_2/d x_1 - d f_1/d x_2 for n = 2 and to the usual curl for n = 3.
/// Throws UnsupportedDimension for n > 4.
LeviCivitaTensor curl_bar_levi_civita(const VectorField& f, Arith arith = Arith::value);

/// Dual contraction back to a vector field,
///     (curl T)_k = (-1)^(n+1) / (n-2)! * sum_{e,m} eps(e,k,m) d T_e / d x_m,
/// which is [-dT/dx_2, dT/dx_1] for n = 2 and the usual curl for n = 3. With this choice
/// (-1)^n curl(curl_bar f) equals rot(rot_bar f).
VectorField curl_levi_civita(const LeviCivitaTensor& T, Arith arith = Arith::value);

} // namespace hhd
