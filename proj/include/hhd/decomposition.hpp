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

#include <map>
#include <string>
#include <vector>

#include "hhd/field.hpp"
#include "hhd/newton.hpp"

namespace hhd {

struct DecompositionOptions {
  /// Compute r = f - g and leave the rotation potentials at zero.
  bool skip_rotation = false;
  /// Nodes this far from the faces form the "interior" region of the report.
  std::size_t residual_margin = kComposedMargin;
};

/// Keys of `DecompositionResult::report`:
///   residual_l2_rel, residual_max            f - g - r on the interior (relative L2, absolute max)
///   residual_l2_rel_all, residual_max_all    the same on the whole grid
///   f_l2, g_l2, r_l2                         interior L2 norms
///   div_r_l2, div_r_max, div_r_ulp           divergence of r; ulp is max |div r| / (eps * scale)
///   rotbar_g_l2, rotbar_g_max, rotbar_g_ulp  stored components of rot_bar(g)
///   density_decays                           1 if every density decays toward the faces, else 0
struct DecompositionResult {
  VectorField g;
  VectorField r;
  PotentialBundle F;
  DensityBundle phi;
  VectorField residual;
  std::map<std::string, double> report;
  bool rotation_skipped = false;
};

/// Splits f into g = grad G and r = rot R with G = N div f and R = N rot_bar f.
DecompositionResult decompose(const VectorField& f, const QuadratureConfig& cfg = {},
                              const DecompositionOptions& options = {});

/// Three-dimensional split through the scalar potential Phi = (1/4pi) int div f / |x - xi| and
/// the vector potential A = (1/4pi) int curl f / |x - xi|, with g = -grad Phi and r = curl A.
/// The result is expressed in the n-dimensional conventions: F.G = -Phi and
/// R_12 = A_3, R_13 = -A_2, R_23 = A_1; rho^12 = -(curl f)_3, rho^13 = (curl f)_2,
/// rho^23 = -(curl f)_1. Throws UnsupportedDimension unless n = 3.
DecompositionResult decompose_classical_3d(const VectorField& f, const QuadratureConfig& cfg = {},
                                           const DecompositionOptions& options = {});

} // namespace hhd
