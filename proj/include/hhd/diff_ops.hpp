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
#include <vector>

#include "hhd/field.hpp"

namespace hhd {

/// Every operator here is built from one first-difference stencil: second-order central
/// differences at interior nodes and second-order one-sided differences on the faces.
/// Second-order operators are compositions of that stencil, so mixed differences commute
/// exactly (up to rounding) wherever only central stencils are involved: one node in from
/// the faces for single compositions, two nodes in for the composed operators.
///
/// `Arith::magnitude` evaluates the same stencil graph on absolute values with absolute
/// coefficients and with every subtraction turned into an addition. The result bounds the
/// magnitude of every intermediate term, which is the scale that rounding errors are
/// measured against in the identity checks.
enum class Arith { value, magnitude };

/// Margin (in nodes) on which single and composed central stencils apply.
inline constexpr std::size_t kInteriorMargin = 1;
inline constexpr std::size_t kComposedMargin = 2;

ScalarField partial(const ScalarField& s, std::size_t axis, Arith arith = Arith::value);

VectorField gradient(const ScalarField& G, Arith arith = Arith::value);

/// Sum of d f_k / d x_k.
ScalarField divergence(const VectorField& f, Arith arith = Arith::value);

struct Jacobian {
  std::size_t n = 0;
  std::vector<ScalarField> J; // J[i*n + j] = d f_i / d x_j
  std::vector<ScalarField> S; // (J + J^T) / 2
  std::vector<ScalarField> A; // (J - J^T) / 2

  const ScalarField& full(std::size_t i, std::size_t j) const { return J.at(i * n + j); }
  const ScalarField& symmetric(std::size_t i, std::size_t j) const { return S.at(i * n + j); }
  const ScalarField& antisymmetric(std::size_t i, std::size_t j) const { return A.at(i * n + j); }
};

Jacobian jacobian(const VectorField& f);

/// Basic rotation density in the (i,j) plane: d f_i / d x_j - d f_j / d x_i (twice A_ij).
/// Returns a zero field for i == j.
ScalarField rot_bar_ij(const VectorField& f, std::size_t i, std::size_t j, Arith arith = Arith::value);

/// All basic rotation densities as an antisymmetric matrix field.
AntisymMatrixField rot_bar(const VectorField& f, Arith arith = Arith::value);

/// {divergence(f), rot_bar(f)}.
DensityBundle density_derivative(const VectorField& f);

/// Basic rotation of a plane potential: +dR/dx_j in slot i, -dR/dx_i in slot j, zeros elsewhere.
/// Throws DomainError for i == j.
VectorField rot_ij(const ScalarField& R, std::size_t i, std::size_t j, Arith arith = Arith::value);

/// Row divergence of an antisymmetric potential: component k is sum_m d R_km / d x_m.
VectorField rot(const AntisymMatrixField& R, Arith arith = Arith::value);

/// Same quantity as `rot`, evaluated as half the sum of rot_ij(R_ij) over all ordered pairs.
VectorField rot_half_sum(const AntisymMatrixField& R);

/// gradient(F.G) + rot(F.R).
VectorField potential_derivative(const PotentialBundle& F);

/// Sum_k partial(partial(s, k), k): the wide stencil, not the compact 3-point one.
ScalarField laplacian(const ScalarField& s, Arith arith = Arith::value);
VectorField laplacian(const VectorField& f, Arith arith = Arith::value);

/// gradient(divergence(f)) + rot(rot_bar(f)).
VectorField grad_div_plus_rot_rotbar(const VectorField& f, Arith arith = Arith::value);

} // namespace hhd
