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

#include "hhd/fixtures.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

#include "hhd/errors.hpp"

namespace hhd {

ScalarField SmoothScalar::sample(const GridSpec& grid) const {
  return ScalarField::sample(grid, [this](std::span<const double> x) { return value(x); });
}

ScalarField SmoothScalar::sample_partial(const GridSpec& grid, std::size_t axis) const {
  std::vector<double> g(grid.n());
  return ScalarField::sample(grid, [&](std::span<const double> x) {
    gradient(x, g);
    return g.at(axis);
  });
}

ScalarField SmoothScalar::sample_laplacian(const GridSpec& grid) const {
  const std::size_t n = grid.n();
  std::vector<double> h(n * n);
  return ScalarField::sample(grid, [&](std::span<const double> x) {
    hessian(x, h);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += h[k * n + k];
    }
    return s;
  });
}

GaussianBump::GaussianBump(std::vector<double> centre, double width, double amplitude)
    : centre_(std::move(centre)), inv_w2_(1.0 / (width * width)), amplitude_(amplitude) {}

double GaussianBump::value(std::span<const double> x) const {
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    r2 += (x[k] - centre_[k]) * (x[k] - centre_[k]);
  }
  return amplitude_ * std::exp(-r2 * inv_w2_);
}

void GaussianBump::gradient(std::span<const double> x, std::span<double> out) const {
  const double v = value(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = -2.0 * inv_w2_ * (x[k] - centre_[k]) * v;
  }
}

void GaussianBump::hessian(std::span<const double> x, std::span<double> out) const {
  const std::size_t n = x.size();
  const double v = value(x);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double ya = x[a] - centre_[a];
      const double yb = x[b] - centre_[b];
      out[a * n + b] = (4.0 * inv_w2_ * inv_w2_ * ya * yb - (a == b ? 2.0 * inv_w2_ : 0.0)) * v;
    }
  }
}

Quadratic::Quadratic(std::size_t n, std::vector<double> q) : n_(n), q_(std::move(q)) {
  if (q_.size() != n * n) {
    throw std::invalid_argument("quadratic form needs n*n coefficients");
  }
}

double Quadratic::value(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      s += x[a] * q_[a * n_ + b] * x[b];
    }
  }
  return 0.5 * s;
}

void Quadratic::gradient(std::span<const double> x, std::span<double> out) const {
  for (std::size_t a = 0; a < n_; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < n_; ++b) {
      s += 0.5 * (q_[a * n_ + b] + q_[b * n_ + a]) * x[b];
    }
    out[a] = s;
  }
}

void Quadratic::hessian(std::span<const double>, std::span<double> out) const {
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      out[a * n_ + b] = 0.5 * (q_[a * n_ + b] + q_[b * n_ + a]);
    }
  }
}

RandomSmooth::RandomSmooth(std::size_t n, std::uint64_t seed, std::size_t modes, double envelope,
                           double max_wavenumber)
    : n_(n), inv_e2_(1.0 / (envelope * envelope)) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.5, 1.0);
  std::uniform_real_distribution<double> wave(-max_wavenumber, max_wavenumber);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t m = 0; m < modes; ++m) {
    amp_.push_back(sign(rng) ? amp(rng) : -amp(rng));
    phase_.push_back(phase(rng));
    for (std::size_t k = 0; k < n; ++k) {
      k_.push_back(wave(rng));
    }
  }
}

double RandomSmooth::value(std::span<const double> x) const {
  double r2 = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    r2 += x[k] * x[k];
  }
  double c = 0.0;
  for (std::size_t m = 0; m < amp_.size(); ++m) {
    double theta = phase_[m];
    for (std::size_t k = 0; k < n_; ++k) {
      theta += k_[m * n_ + k] * x[k];
    }
    c += amp_[m] * std::cos(theta);
  }
  return std::exp(-r2 * inv_e2_) * c;
}

void RandomSmooth::gradient(std::span<const double> x, std::span<double> out) const {
  double r2 = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    r2 += x[k] * x[k];
  }
  const double e = std::exp(-r2 * inv_e2_);
  double c = 0.0;
  std::vector<double> dc(n_, 0.0);
  for (std::size_t m = 0; m < amp_.size(); ++m) {
    double theta = phase_[m];
    for (std::size_t k = 0; k < n_; ++k) {
      theta += k_[m * n_ + k] * x[k];
    }
    c += amp_[m] * std::cos(theta);
    for (std::size_t k = 0; k < n_; ++k) {
      dc[k] -= amp_[m] * std::sin(theta) * k_[m * n_ + k];
    }
  }
  for (std::size_t k = 0; k < n_; ++k) {
    out[k] = c * (-2.0 * inv_e2_ * x[k] * e) + e * dc[k];
  }
}

void RandomSmooth::hessian(std::span<const double> x, std::span<double> out) const {
  double r2 = 0.0;
  for (std::size_t k = 0; k < n_; ++k) {
    r2 += x[k] * x[k];
  }
  const double e = std::exp(-r2 * inv_e2_);
  double c = 0.0;
  std::vector<double> dc(n_, 0.0);
  std::vector<double> hc(n_ * n_, 0.0);
  for (std::size_t m = 0; m < amp_.size(); ++m) {
    double theta = phase_[m];
    for (std::size_t k = 0; k < n_; ++k) {
      theta += k_[m * n_ + k] * x[k];
    }
    const double cs = amp_[m] * std::cos(theta);
    const double sn = amp_[m] * std::sin(theta);
    c += cs;
    for (std::size_t a = 0; a < n_; ++a) {
      dc[a] -= sn * k_[m * n_ + a];
      for (std::size_t b = 0; b < n_; ++b) {
        hc[a * n_ + b] -= cs * k_[m * n_ + a] * k_[m * n_ + b];
      }
    }
  }
  for (std::size_t a = 0; a < n_; ++a) {
    const double dea = -2.0 * inv_e2_ * x[a] * e;
    for (std::size_t b = 0; b < n_; ++b) {
      const double deb = -2.0 * inv_e2_ * x[b] * e;
      const double hea = (4.0 * inv_e2_ * inv_e2_ * x[a] * x[b] - (a == b ? 2.0 * inv_e2_ : 0.0)) * e;
      out[a * n_ + b] = c * hea + dea * dc[b] + dc[a] * deb + e * hc[a * n_ + b];
    }
  }
}

namespace {

constexpr std::array<std::string_view, 6> kNames = {"zero",   "pure-gradient",   "pure-rotation",
                                                     "mixed", "linear-rotation", "random-smooth"};

struct RotationPart {
  std::size_t i;
  std::size_t j;
  std::shared_ptr<SmoothScalar> seed;
};

struct Seeds {
  std::vector<std::shared_ptr<SmoothScalar>> gradient;
  std::vector<RotationPart> rotation;
  bool decays = true;
};

Fixture build(std::string name, std::uint64_t seed, const GridSpec& grid, const Seeds& seeds) {
  const std::size_t n = grid.n();
  const std::size_t nodes = grid.node_count();
  VectorField g(grid);
  VectorField r(grid);
  ScalarField gamma(grid);
  AntisymMatrixField rho(grid);
  ScalarField psi(grid);
  AntisymMatrixField s(grid);

  std::vector<double> x(n);
  std::vector<double> grad(n);
  std::vector<double> hess(n * n);
  for (std::size_t p = 0; p < nodes; ++p) {
    grid.position(p, x);
    for (const auto& part : seeds.gradient) {
      psi[p] += part->value(x);
      part->gradient(x, grad);
      part->hessian(x, hess);
      for (std::size_t k = 0; k < n; ++k) {
        g[k][p] += grad[k];
        gamma[p] += hess[k * n + k];
      }
    }
    for (const auto& part : seeds.rotation) {
      const std::size_t i = part.i;
      const std::size_t j = part.j;
      s.upper(i, j)[p] += part.seed->value(x);
      part.seed->gradient(x, grad);
      part.seed->hessian(x, hess);
      r[i][p] += grad[j];
      r[j][p] -= grad[i];
      // rho_lm = d f_l / d x_m - d f_m / d x_l for f = rot_ij(seed), in terms of the seed Hessian H.
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t m = l + 1; m < n; ++m) {
          double v = 0.0;
          v += l == i ? hess[j * n + m] : 0.0;
          v -= l == j ? hess[i * n + m] : 0.0;
          v -= m == i ? hess[j * n + l] : 0.0;
          v += m == j ? hess[i * n + l] : 0.0;
          rho.upper(l, m)[p] += v;
        }
      }
    }
  }
  VectorField f = g + r;
  return Fixture{std::move(name), seed,           std::move(f),   std::move(gamma), std::move(rho),
                 std::move(g),    std::move(r),   std::move(psi), std::move(s),     seeds.decays};
}

} // namespace

std::span<const std::string_view> fixture_names() { return kNames; }

Fixture make_fixture(std::string_view name, const GridSpec& grid, std::pair<std::size_t, std::size_t> plane,
                     std::uint64_t seed) {
  const std::size_t n = grid.n();
  auto [i, j] = plane;
  if (i > j) {
    std::swap(i, j);
  }
  if (i == j || j >= n) {
    throw RangeError("rotation plane must name two distinct axes below n");
  }
  const std::vector<double> origin(n, 0.0);
  Seeds seeds;
  if (name == "zero") {
  } else if (name == "pure-gradient") {
    seeds.gradient.push_back(std::make_shared<GaussianBump>(origin));
  } else if (name == "pure-rotation") {
    seeds.rotation.push_back({i, j, std::make_shared<GaussianBump>(origin)});
  } else if (name == "mixed") {
    seeds.gradient.push_back(std::make_shared<GaussianBump>(origin));
    seeds.rotation.push_back({i, j, std::make_shared<GaussianBump>(origin)});
  } else if (name == "linear-rotation") {
    // rot_ij of -(x_i^2 + x_j^2) / 2 is -x_j in slot i and x_i in slot j.
    std::vector<double> q(n * n, 0.0);
    q[i * n + i] = -1.0;
    q[j * n + j] = -1.0;
    seeds.rotation.push_back({i, j, std::make_shared<Quadratic>(n, std::move(q))});
    seeds.decays = false;
  } else if (name == "random-smooth") {
    seeds.gradient.push_back(std::make_shared<RandomSmooth>(n, seed));
    std::uint64_t stream = 1;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        seeds.rotation.push_back({a, b, std::make_shared<RandomSmooth>(n, seed * 1000003ULL + stream++)});
      }
    }
  } else {
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
  }
  return build(std::string(name), seed, grid, seeds);
}

} // namespace hhd
