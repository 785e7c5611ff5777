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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhd/field.hpp"
#include "hhd/fixtures.hpp"
#include "hhd/newton.hpp"

namespace hhd {

/// Rounding-level identities pass when every node satisfies |residual| <= 16 eps * scale,
/// where scale is the same operator chain evaluated with `Arith::magnitude`.
inline constexpr double kStencilUlps = 16.0;
/// Quadrature-level identities pass below 2 % relative L2 and, when a refined grid is run,
/// must converge with observed order >= 1.
inline constexpr double kQuadratureTolerance = 0.02;
inline constexpr double kMinObservedOrder = 1.0;

enum class ToleranceClass { stencil, quadrature };
std::string_view to_string(ToleranceClass t);

struct CheckReport {
  std::string name;
  std::string statement;
  std::string grid;
  std::string fixture;
  std::uint64_t seed = 0;
  ToleranceClass tolerance_class = ToleranceClass::stencil;
  /// Value compared against `tolerance`: an ulp ratio for stencil checks, a relative L2 error
  /// for quadrature checks.
  double residual = 0.0;
  double residual_l2 = 0.0;
  double residual_max = 0.0;
  double tolerance = 0.0;
  std::optional<double> refined_residual;
  std::optional<double> observed_order;
  bool pass = false;
  double runtime_seconds = 0.0;
  std::vector<std::string> notes;
};

/// rot_bar(gradient(G)) vanishes on the interior; for n <= 4 the Levi-Civita curl of
/// gradient(G) is checked as well.
CheckReport check_gradient_rotation_free(const ScalarField& G);

/// divergence(rot(R)) vanishes two nodes in from the faces.
CheckReport check_rotation_divergence_free(const AntisymMatrixField& R);

/// partial_k(N q) against N(d q / d x_k) for every axis. `exact_partials`, when given, holds the
/// analytic derivatives of q; otherwise the discrete partials are used.
CheckReport check_newton_partial_commute(const ScalarField& q, std::span<const ScalarField> exact_partials,
                                         const QuadratureConfig& cfg, double tolerance = kQuadratureTolerance);

/// gradient(divergence(f)) + rot(rot_bar(f)) equals the component-wise Laplacian.
CheckReport check_grad_div_rot_rot_laplacian(const VectorField& f);

/// (-1)^n curl(curl_bar f) through the Levi-Civita tensor equals rot(rot_bar(f)); n in 2..4.
CheckReport check_levi_civita_curl_curl(const VectorField& f);

/// For F = N(density_derivative(f)): density_derivative(potential_derivative(F)) equals the
/// Laplacian of F slot by slot, and the Laplacian of F reproduces the densities.
CheckReport check_potential_laplacian(const VectorField& f, const QuadratureConfig& cfg,
                                      double tolerance = kQuadratureTolerance);

/// Full decomposition: g + r reconstructs f, g is rotation-free and r divergence-free.
/// With `evaluate_on`, f is sampled on a padded grid and the reconstruction error is measured
/// after cropping to that inner grid.
CheckReport check_reconstruction(const VectorField& f, const QuadratureConfig& cfg,
                                 double tolerance = kQuadratureTolerance,
                                 const std::optional<GridSpec>& evaluate_on = std::nullopt);

struct CheckInfo {
  std::string_view name;
  std::string_view statement;
  ToleranceClass tolerance_class;
};

/// Every identity the suite covers, in run order.
std::span<const CheckInfo> check_registry();

/// Statements that must each be covered by a registered check.
std::span<const std::string_view> required_statements();

/// Required statements with no registered check (empty when the suite is complete).
std::vector<std::string> missing_statements();

struct RunOptions {
  std::vector<std::string> checks; // empty runs every registered check
  bool refine = true;              // rerun quadrature checks on the refined grid
  std::uint64_t seed = 1;
  std::pair<std::size_t, std::size_t> plane = {0, 1};
  double quadrature_tolerance = kQuadratureTolerance;
  double padding = 1.0;
};

/// Runs the selected checks for every (grid, fixture) pair in a fixed order. Quadrature checks
/// are skipped for fixtures that do not decay. If a required statement has no check, a failing
/// "coverage" report is appended.
std::vector<CheckReport> run_all(std::span<const GridSpec> grids, std::span<const std::string> fixtures,
                                 const QuadratureConfig& cfg, const RunOptions& options = {});

bool all_passed(std::span<const CheckReport> reports);

/// One JSON object per report, with stable key names, inside a top-level array.
std::string reports_to_json(std::span<const CheckReport> reports);

} // namespace hhd
