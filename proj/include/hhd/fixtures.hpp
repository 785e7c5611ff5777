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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hhd/field.hpp"

namespace hhd {

/// Closed-form scalar function with exact first and second derivatives. Used to build test
/// fields together with their analytic densities.
class SmoothScalar {
public:
  virtual ~SmoothScalar() = default;
  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;
  /// Row-major n x n Hessian.
  virtual void hessian(std::span<const double> x, std::span<double> out) const = 0;

  ScalarField sample(const GridSpec& grid) const;
  ScalarField sample_partial(const GridSpec& grid, std::size_t axis) const;
  ScalarField sample_laplacian(const GridSpec& grid) const;
};

/// amplitude * exp(-|x - centre|^2 / width^2).
class GaussianBump final : public SmoothScalar {
public:
  GaussianBump(std::vector<double> centre, double width = 1.0, double amplitude = 1.0);
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hessian(std::span<const double> x, std::span<double> out) const override;

private:
  std::vector<double> centre_;
  double inv_w2_;
  double amplitude_;
};

/// 0.5 * x^T Q x with a symmetric n x n matrix Q (row-major).
class Quadratic final : public SmoothScalar {
public:
  explicit Quadratic(std::size_t n, std::vector<double> q);
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hessian(std::span<const double> x, std::span<double> out) const override;

private:
  std::size_t n_;
  std::vector<double> q_;
};

/// Band-limited noise under a Gaussian envelope:
///     exp(-|x|^2 / envelope^2) * sum_m a_m cos(k_m . x + phase_m),
/// with amplitudes, wave vectors (|k_i| <= max_wavenumber) and phases drawn from a seeded
/// mt19937_64.
class RandomSmooth final : public SmoothScalar {
public:
  RandomSmooth(std::size_t n, std::uint64_t seed, std::size_t modes = 6, double envelope = 1.0,
               double max_wavenumber = 1.5);
  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
  void hessian(std::span<const double> x, std::span<double> out) const override;

private:
  std::size_t n_;
  double inv_e2_;
  std::vector<double> amp_;
  std::vector<double> phase_;
  std::vector<double> k_; // modes x n
};

/// Sampled test field with analytic references. Every fixture is f = grad(Psi) + rot(S) for
/// closed-form seeds Psi and antisymmetric S, so gamma = Laplacian(Psi) and rho follow from the
/// seeds' Hessians exactly.
struct Fixture {
  std::string name;
  std::uint64_t seed = 0;
  VectorField f;
  ScalarField gamma;                 // analytic divergence of f
  AntisymMatrixField rho;            // analytic rotation densities of f
  VectorField g;                     // analytic gradient part
  VectorField r;                     // analytic rotation part
  ScalarField gradient_seed;         // Psi
  AntisymMatrixField rotation_seed;  // S
  bool decays = true;                // false for fields that do not vanish at infinity
};

/// Known fixture names: zero, pure-gradient, pure-rotation, mixed, linear-rotation,
/// random-smooth. `plane` picks the rotation plane (zero-based, i < j). Throws
/// std::invalid_argument for an unknown name.
Fixture make_fixture(std::string_view name, const GridSpec& grid, std::pair<std::size_t, std::size_t> plane = {0, 1},
                     std::uint64_t seed = 1);

std::span<const std::string_view> fixture_names();

} // namespace hhd
