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
#include <limits>

#include "hhd/field.hpp"

namespace hhd {

/// Discrete norms over the nodes at least `margin` nodes away from every face.
/// `l2` is sqrt(sum v^2 * cell_volume), summed over all components.
struct Norms {
  double l2 = 0.0;
  double max = 0.0;
};

Norms norms(const ScalarField& s, std::size_t margin = 0);
Norms norms(const VectorField& f, std::size_t margin = 0);
Norms norms(const AntisymMatrixField& m, std::size_t margin = 0);

/// ||a - b||_2 / ||b||_2 on the margin region; 0 when both vanish, +inf when only b does.
double relative_l2(const ScalarField& a, const ScalarField& b, std::size_t margin = 0);
double relative_l2(const VectorField& a, const VectorField& b, std::size_t margin = 0);
double relative_l2(const AntisymMatrixField& a, const AntisymMatrixField& b, std::size_t margin = 0);

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// max over the region of |residual| / (eps * scale), node- and component-wise. A node with
/// zero scale contributes 0 if its residual is exactly 0 and +inf otherwise.
double ulp_ratio(const ScalarField& residual, const ScalarField& scale, std::size_t margin);
double ulp_ratio(const VectorField& residual, const VectorField& scale, std::size_t margin);
double ulp_ratio(const AntisymMatrixField& residual, const AntisymMatrixField& scale, std::size_t margin);

/// Convergence order from errors at two spacings that differ by `refinement_ratio`.
/// +inf when the fine error is exactly zero.
double observed_order(double coarse_error, double fine_error, double refinement_ratio = 2.0);

} // namespace hhd
