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

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "hhd/diagnostics.hpp"
#include "hhd/diff_ops.hpp"
#include "hhd/errors.hpp"
#include "hhd/fixtures.hpp"
#include "hhd/newton.hpp"
#include "hhd/norms.hpp"

using namespace hhd;

namespace {

constexpr double kPi = std::numbers::pi;

struct QuietWarnings {
  QuietWarnings() : previous(set_warning_handler([this](std::string_view) { ++count; })) {}
  ~QuietWarnings() { set_warning_handler(previous); }
  WarningHandler previous;
  int count = 0;
};

double gauss(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) {
    r2 += v * v;
  }
  return std::exp(-r2);
}

// Straight double sum over grid nodes with the same self-cell rule, written out from the
// kernel definition: Green's function -1/(4 pi r) in 3D, log(r)/(2 pi) in 2D, and the mean
// of the profile over an equal-volume ball for the singular cell.
ScalarField naive_potential(const ScalarField& q) {
  const GridSpec& g = q.grid();
  const std::size_t n = g.n();
  const double dv = g.cell_volume();
  auto profile = [n](double r) {
    return n == 2 ? std::log(r) / (2.0 * kPi) : -1.0 / (4.0 * kPi * r);
  };
  double self = 0.0;
  if (n == 2) {
    const double a = std::sqrt(dv / kPi);
    self = (a * a / 2.0 * std::log(a) - a * a / 4.0);
  } else {
    const double a = std::cbrt(dv * 3.0 / (4.0 * kPi));
    self = -a * a / 2.0;
  }
  std::vector<double> x(n), xi(n);
  double counter = 0.0;
  for (std::size_t b = 0; b < g.node_count(); ++b) {
    g.position(b, xi);
    double r = 0.0;
    for (double v : xi) {
      r += v * v;
    }
    counter += (r == 0.0 ? self : profile(std::sqrt(r)) * dv) * q[b];
  }
  ScalarField out(g);
  for (std::size_t a = 0; a < g.node_count(); ++a) {
    g.position(a, x);
    double s = 0.0;
    for (std::size_t b = 0; b < g.node_count(); ++b) {
      if (a == b) {
        s += self * q[b];
        continue;
      }
      g.position(b, xi);
      double r2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        r2 += (x[k] - xi[k]) * (x[k] - xi[k]);
      }
      s += profile(std::sqrt(r2)) * dv * q[b];
    }
    out[a] = s - counter;
  }
  return out;
}

ScalarField noise(const GridSpec& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ScalarField s(g);
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    s[p] = g.is_interior(p, 2) ? dist(rng) : 0.0;
  }
  return s;
}

} // namespace

TEST_CASE("kernel values") {
  const auto k3 = KernelParams::for_dimension(3);
  CHECK(kernel(std::array{1.0, 0.0, 0.0}, std::array{2.0, 0.0, 0.0}, k3) ==
        doctest::Approx(-1.0 / (8.0 * kPi)).epsilon(1e-14));
  CHECK(kernel(std::array{1.0, 0.0, 0.0}, std::array{2.0, 0.0, 0.0}, k3) == doctest::Approx(-0.039789).epsilon(1e-5));
  const auto k2 = KernelParams::for_dimension(2);
  CHECK(kernel(std::array{1.0, 0.0}, std::array{0.0, 1.0}, k2) == doctest::Approx(std::log(2.0) / (4.0 * kPi)).epsilon(1e-14));
  CHECK(kernel(std::array{1.0, 0.0}, std::array{0.0, 1.0}, k2) == doctest::Approx(0.055157).epsilon(1e-5));
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto k = KernelParams::for_dimension(n);
    std::vector<double> x(n, 0.0), xi(n, 0.3);
    CHECK(kernel(x, xi, k) == 0.0);
    CHECK_THROWS_AS(kernel(xi, xi, k), SingularityError);
  }
  CHECK_THROWS_AS(kernel(std::array{1.0, 0.0}, std::array{0.0, 0.0}, k2), SingularityError);
  CHECK_THROWS_AS(KernelParams::for_dimension(1), UnsupportedDimension);
}

TEST_CASE("unit ball volumes") {
  CHECK(std::abs(unit_ball_volume(3) - 4.0 * kPi / 3.0) <= 4.0 * kEpsilon * (4.0 * kPi / 3.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(unit_ball_volume(5) == doctest::Approx(8.0 * kPi * kPi / 15.0).epsilon(1e-14));
  // the kernel profile is the fundamental solution: n (2-n) V_n r^(n-2) profile(r) = 1
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto k = KernelParams::for_dimension(n);
    const double r = 1.7;
    CHECK(k.profile(r) * static_cast<double>(n) * (2.0 - static_cast<double>(n)) * unit_ball_volume(n) *
              std::pow(r, static_cast<double>(n) - 2.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("ball integral matches a radial quadrature of the profile") {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto k = KernelParams::for_dimension(n);
    const double volume = 0.37;
    const double a = std::pow(volume / unit_ball_volume(n), 1.0 / static_cast<double>(n));
    // integral over the ball = n V_n int_0^a profile(r) r^(n-1) dr, midpoint rule
    const int steps = 200000;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double r = (i + 0.5) * a / steps;
      s += k.profile(r) * std::pow(r, static_cast<double>(n) - 1.0);
    }
    s *= static_cast<double>(n) * unit_ball_volume(n) * a / steps;
    CAPTURE(n);
    CHECK(k.ball_integral(volume) == doctest::Approx(s).epsilon(1e-6));
  }
}

TEST_CASE("newton_apply matches an independent double sum") {
  QuietWarnings quiet;
  std::mt19937_64 rng(21);
  for (std::size_t n : {2, 3}) {
    const GridSpec g = GridSpec::cube(n, n == 2 ? 13 : 7, -1.5, 1.5);
    const ScalarField q = noise(g, rng);
    const ScalarField oracle = naive_potential(q);
    for (Backend b : {Backend::direct, Backend::fft}) {
      QuadratureConfig cfg;
      cfg.backend = b;
      const ScalarField got = newton_apply(q, cfg);
      CAPTURE(n);
      CHECK(norms(got - oracle).max <= 1e-12 * norms(oracle).max);
    }
  }
}

TEST_CASE("newton_apply basics") {
  QuietWarnings quiet;
  const GridSpec g = GridSpec::cube(2, 17, -2.0, 2.0);
  CHECK(norms(newton_apply(ScalarField(g))).max == 0.0);

  // single-cell mass at the origin: the output at the origin is self - self = 0
  ScalarField delta(g);
  delta[g.flat_index(std::array<std::size_t, 2>{8, 8})] = 1.0 / g.cell_volume();
  CHECK(newton_apply(delta).at(std::array<std::size_t, 2>{8, 8}) == 0.0);

  ScalarField bad(g);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(newton_apply(bad), DataError);
}

TEST_CASE("newton_apply is linear and the counterterm only shifts by a constant") {
  QuietWarnings quiet;
  std::mt19937_64 rng(99);
  const GridSpec g = GridSpec::cube(3, 9, -1.0, 1.0);
  const ScalarField a = noise(g, rng);
  const ScalarField b = noise(g, rng);
  const ScalarField lhs = newton_apply(2.0 * a + b);
  const ScalarField rhs = 2.0 * newton_apply(a) + newton_apply(b);
  const ScalarField scale = 2.0 * newton_apply(a, {}, Arith::magnitude) + newton_apply(b, {}, Arith::magnitude);
  CHECK(ulp_ratio(lhs - rhs, scale, 0) <= 8.0);

  QuadratureConfig raw;
  raw.counterterm = false;
  const ScalarField shift = newton_apply(a, raw) - newton_apply(a);
  const ScalarField shift_scale = newton_apply(a, raw, Arith::magnitude) + newton_apply(a, {}, Arith::magnitude);
  ScalarField spread = shift;
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    spread[p] -= shift[0];
  }
  CHECK(ulp_ratio(spread, shift_scale, 0) <= 8.0);
  // derivatives do not see the constant
  CHECK(ulp_ratio(gradient(newton_apply(a, raw)) - gradient(newton_apply(a)),
                  gradient(shift_scale, Arith::magnitude), kInteriorMargin) <= 8.0);
}

TEST_CASE("fft and direct backends agree") {
  QuietWarnings quiet;
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < n; ++k) {
      dims.push_back((n == 2 ? 33 : (n == 3 ? 13 : 6)) + k);
    }
    const GridSpec g(dims, std::vector<double>(n, -1.0), std::vector<double>(n, 1.5));
    const ScalarField q = noise(g, rng);
    QuadratureConfig direct;
    QuadratureConfig fft;
    fft.backend = Backend::fft;
    const ScalarField a = newton_apply(q, direct);
    const ScalarField b = newton_apply(q, fft);
    CAPTURE(n);
    CHECK(norms(a - b).max <= 1e-12 * norms(a).max);
  }
}

TEST_CASE("direct convolution is deterministic") {
  QuietWarnings quiet;
  std::mt19937_64 rng(6);
  const GridSpec g = GridSpec::cube(2, 41, -1.0, 1.0);
  const ScalarField q = noise(g, rng);
  const ScalarField a = newton_apply(q);
  const ScalarField b = newton_apply(q);
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    REQUIRE(a[p] == b[p]);
  }
}

TEST_CASE("decay warning") {
  const GridSpec g = GridSpec::cube(2, 9, -1.0, 1.0);
  QuietWarnings quiet;
  newton_apply(ScalarField::sample(g, [](auto) { return 1.0; }));
  CHECK(quiet.count == 1);
  CHECK(check_decay(ScalarField::sample(GridSpec::cube(2, 33, -6.0, 6.0), gauss), 1e-3).decays);
  CHECK_FALSE(check_decay(ScalarField::sample(g, gauss), 1e-3).decays);
}

TEST_CASE("option parsing") {
  CHECK(parse_backend("fft") == Backend::fft);
  CHECK(parse_self_cell("exclude") == SelfCell::exclude);
  CHECK(to_string(parse_self_cell("ball")) == "ball");
  CHECK_THROWS_AS(parse_backend("gpu"), std::invalid_argument);
}

TEST_CASE("Poisson: the Laplacian inverts the potential") {
  QuietWarnings quiet;
  // oracle: Laplacian of exp(-|x|^2)
  auto error_at = [](std::size_t points) {
    const GridSpec g = GridSpec::cube(2, points, -6.0, 6.0);
    const GaussianBump psi(std::vector<double>{0.0, 0.0});
    const ScalarField gamma = psi.sample_laplacian(g);
    const ScalarField G = newton_apply(gamma);
    const double grad_err = relative_l2(gradient(G), gradient(psi.sample(g)), kComposedMargin);
    return std::pair{relative_l2(laplacian(G), gamma, kComposedMargin), grad_err};
  };
  const auto [c, cg] = error_at(129);
  const auto [f, fg] = error_at(257);
  CHECK(c <= 0.02);
  CHECK(observed_order(c, f) >= 1.0);
  CHECK(fg <= 0.01);
  CHECK(fg < cg);
}

TEST_CASE("Newton potential of a pure gradient and pure rotation fixture") {
  QuietWarnings quiet;
  const GridSpec g = GridSpec::cube(2, 65, -6.0, 6.0);
  const Fixture grad = make_fixture("pure-gradient", g);
  const PotentialBundle Fg = newton_apply_bundle(density_derivative(grad.f));
  // rho of a sampled gradient is zero only up to the O(h^2) stencil error
  CHECK(norms(Fg.R).l2 <= 1e-3 * norms(Fg.G).l2);
  const Fixture rot = make_fixture("pure-rotation", g);
  const PotentialBundle Fr = newton_apply_bundle(density_derivative(rot.f));
  CHECK(norms(Fr.G).l2 <= 1e-3 * norms(Fr.R).l2);
  const PotentialBundle F0 = newton_apply_bundle(density_derivative(VectorField(g)));
  CHECK(norms(F0.G).max == 0.0);
  CHECK(norms(F0.R).max == 0.0);
}

TEST_CASE("Coulomb potential is the negated Newton potential in 3D") {
  QuietWarnings quiet;
  std::mt19937_64 rng(12);
  const GridSpec g = GridSpec::cube(3, 9, -1.0, 1.0);
  const ScalarField q = noise(g, rng);
  QuadratureConfig raw;
  raw.counterterm = false;
  CHECK(norms(coulomb_apply(q) + newton_apply(q, raw)).max <= 1e-13 * norms(coulomb_apply(q)).max);
  CHECK_THROWS_AS(coulomb_apply(ScalarField(GridSpec::cube(2, 5, -1.0, 1.0))), UnsupportedDimension);
}
