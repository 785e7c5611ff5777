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
#include <string_view>

#include "hhd/diff_ops.hpp"
#include "hhd/field.hpp"

namespace hhd {

/// Volume of the unit n-ball, pi^(n/2) / Gamma(n/2 + 1).
double unit_ball_volume(std::size_t n);

/// Fundamental solution of the Laplace equation in R^n, with the origin counterterm.
struct KernelParams {
  std::size_t n = 0;
  double unit_ball_volume = 0.0;

  static KernelParams for_dimension(std::size_t n);

  /// Translation-invariant part as a function of distance:
  /// log(r) / (2 pi) for n = 2, r^(2-n) / (n (2-n) V_n) otherwise.
  double profile(double r) const;

  /// Integral of `profile` over a ball centred on the singularity whose volume is `volume`.
  double ball_integral(double volume) const;
};

/// K(x, xi) = profile(|x - xi|) - profile(|xi|). Throws SingularityError for xi == x or xi == 0.
double kernel(std::span<const double> x, std::span<const double> xi, const KernelParams& params);

enum class SelfCell { exclude, ball };
enum class Backend { direct, fft };

std::string_view to_string(SelfCell s);
std::string_view to_string(Backend b);
SelfCell parse_self_cell(std::string_view text);
Backend parse_backend(std::string_view text);

/// Midpoint rule on node-centred cells of volume prod(h_k).
struct QuadratureConfig {
  /// Treatment of the cell that contains a kernel singularity: skip it, or use the exact
  /// integral of the kernel over a ball of the same volume.
  SelfCell self_cell = SelfCell::ball;
  Backend backend = Backend::direct;
  /// Subtract the x-independent profile(|xi|) term. Disabling it only shifts the potential by
  /// a constant.
  bool counterterm = true;
  /// A density whose largest face value exceeds this fraction of its largest interior value
  /// triggers a truncation warning.
  double decay_fraction = 1e-3;
};

struct DecayCheck {
  double boundary_max = 0.0;
  double interior_max = 0.0;
  bool decays = true;
};

DecayCheck check_decay(const ScalarField& q, double fraction);

/// Newton potential N q(x) = integral K(x, xi) q(xi) dxi over the grid box.
///
/// The direct backend sums every output node in a fixed order (row blocks along the last
/// axis) and is bitwise reproducible regardless of the thread count. The fft backend computes
/// the same translation-invariant sum by zero-padded circular convolution.
/// Throws DataError for non-finite input.
ScalarField newton_apply(const ScalarField& q, const QuadratureConfig& cfg = {}, Arith arith = Arith::value);

/// Applies newton_apply to gamma and to each stored rho_ij.
PotentialBundle newton_apply_bundle(const DensityBundle& density, const QuadratureConfig& cfg = {});

/// Classical three-dimensional potential (1 / 4 pi) integral q(xi) / |x - xi| dxi, using the
/// same quadrature (self-cell ball integral r^2 / 2 when enabled). Throws UnsupportedDimension
/// unless n = 3.
ScalarField coulomb_apply(const ScalarField& q, const QuadratureConfig& cfg = {});

} // namespace hhd
