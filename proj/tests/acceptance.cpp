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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hhd/decomposition.hpp"
#include "hhd/diagnostics.hpp"
#include "hhd/diff_ops.hpp"
#include "hhd/field_io.hpp"
#include "hhd/fixtures.hpp"
#include "hhd/levi_civita.hpp"
#include "hhd/norms.hpp"
#include "hhd/verify.hpp"

using namespace hhd;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

GridSpec plane_grid(std::size_t points) { return GridSpec::cube(2, points, -6.0, 6.0); }

QuadratureConfig direct_ball() { return {}; }

QuadratureConfig fft_ball() {
  QuadratureConfig c;
  c.backend = Backend::fft;
  return c;
}

Outcome stencil_suite() {
  const auto t = Clock::now();
  const std::array<std::string, 4> fixtures{"pure-gradient", "pure-rotation", "random-smooth", "linear-rotation"};
  RunOptions opt;
  opt.checks = {"gradient_rotation_free", "rotation_divergence_free", "grad_div_rot_rot_laplacian"};
  opt.refine = false;
  double worst = 0.0;
  bool pass = true;
  std::size_t count = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::array grids{GridSpec::cube(n, n == 4 ? 17 : 33, -4.0, 4.0)};
    for (const auto& r : run_all(grids, fixtures, {}, opt)) {
      worst = std::max(worst, r.residual);
      pass = pass && r.pass;
      ++count;
    }
  }
  const double secs = since(t);
  return {pass && count == 36 && secs < 10.0,
          fmt("%zu checks, worst %.3g ulp (limit 16), %.2f s (limit 10)", count, worst, secs)};
}

Outcome levi_civita_suite() {
  double worst = 0.0;
  bool pass = true;
  for (std::size_t n = 2; n <= 4; ++n) {
    const GridSpec g = GridSpec::cube(n, n == 4 ? 17 : 33, -4.0, 4.0);
    for (const char* name : {"pure-gradient", "pure-rotation", "mixed", "random-smooth", "linear-rotation"}) {
      const CheckReport r = check_levi_civita_curl_curl(make_fixture(name, g).f);
      worst = std::max(worst, r.residual);
      pass = pass && r.pass;
    }
  }
  // The x4-x5 term in five dimensions: negative at 123, 231, 312, positive at 132, 213, 321.
  using E = std::array<std::size_t, 3>;
  bool table = true;
  for (const E& e : {E{0, 1, 2}, E{1, 2, 0}, E{2, 0, 1}}) {
    table = table && levi_civita(std::array<std::size_t, 5>{e[0], e[1], e[2], 4, 3}) == -1;
  }
  for (const E& e : {E{0, 2, 1}, E{1, 0, 2}, E{2, 1, 0}}) {
    table = table && levi_civita(std::array<std::size_t, 5>{e[0], e[1], e[2], 4, 3}) == 1;
  }
  return {pass && table, fmt("curl curl vs rot rot_bar worst %.3g ulp; five-dimensional sign table %s", worst,
                             table ? "matches" : "DIFFERS")};
}

Outcome reconstruction() {
  const auto t = Clock::now();
  const CheckReport coarse = check_reconstruction(make_fixture("mixed", plane_grid(129)).f, direct_ball());
  const double secs = since(t);
  const CheckReport fine = check_reconstruction(make_fixture("mixed", plane_grid(257)).f, direct_ball());
  const double order = observed_order(coarse.residual, fine.residual);
  return {coarse.pass && fine.residual < coarse.residual && order >= 1.0 && secs <= 120.0,
          fmt("129^2 %.4g (limit 0.02), 257^2 %.4g, order %.2f, %.1f s at 129^2", coarse.residual, fine.residual,
              order, secs)};
}

Outcome split_purity() {
  const Fixture grad = make_fixture("pure-gradient", plane_grid(129));
  const Fixture rot = make_fixture("pure-rotation", plane_grid(129));
  const DecompositionResult dg = decompose(grad.f, direct_ball());
  const DecompositionResult dr = decompose(rot.f, direct_ball());
  const double r_leak = norms(dg.r, kComposedMargin).l2 / norms(grad.f, kComposedMargin).l2;
  const double g_leak = norms(dr.g, kComposedMargin).l2 / norms(rot.f, kComposedMargin).l2;
  return {r_leak <= 0.02 && g_leak <= 0.02,
          fmt("|r|/|f| on pure-gradient %.3g, |g|/|f| on pure-rotation %.3g (limit 0.02)", r_leak, g_leak)};
}

Outcome poisson() {
  auto error_at = [](std::size_t points) {
    const Fixture fx = make_fixture("pure-gradient", plane_grid(points));
    return relative_l2(laplacian(newton_apply(fx.gamma, direct_ball())), fx.gamma, kComposedMargin);
  };
  const double c = error_at(129);
  const double f = error_at(257);
  const double order = observed_order(c, f);
  return {c <= 0.02 && order >= 1.0, fmt("129^2 %.4g (limit 0.02), 257^2 %.4g, order %.2f", c, f, order)};
}

Outcome commutation() {
  auto run = [](std::size_t points) {
    const GridSpec g = plane_grid(points);
    const GaussianBump q(std::vector<double>{0.0, 0.0});
    const std::vector<ScalarField> partials{q.sample_partial(g, 0), q.sample_partial(g, 1)};
    return check_newton_partial_commute(q.sample(g), partials, direct_ball());
  };
  const CheckReport c = run(129);
  const CheckReport f = run(257);
  const double order = observed_order(c.residual, f.residual);
  return {c.pass && order >= 1.0,
          fmt("129^2 %.4g (limit 0.02), 257^2 %.4g, order %.2f", c.residual, f.residual, order)};
}

Outcome classical_3d() {
  const GridSpec g = GridSpec::cube(3, 49, -4.0, 4.0);
  const Fixture fx = make_fixture("mixed", g, {0, 1});
  const DecompositionResult general = decompose(fx.f, fft_ball());
  const DecompositionResult classical = decompose_classical_3d(fx.f, fft_ball());
  const double dg = relative_l2(classical.g, general.g, kComposedMargin);
  const double dr = relative_l2(classical.r, general.r, kComposedMargin);
  // the scalar potential of the classical route, Phi = (1 / 4 pi r) * div f
  const ScalarField phi = coulomb_apply(divergence(fx.f), fft_ball());
  const double dG = relative_l2(gradient(general.F.G), -1.0 * gradient(phi), kInteriorMargin);
  return {dg <= 0.02 && dr <= 0.02 && dG <= 0.02,
          fmt("g %.3g, r %.3g, grad G vs -grad Phi %.3g (limit 0.02)", dg, dr, dG)};
}

Outcome five_dimensions() {
  const GridSpec g = GridSpec::cube(5, 9, -1.5, 1.5);
  const Fixture fx = make_fixture("mixed", g, {3, 4});
  const DecompositionResult d = decompose(fx.f, fft_ball());
  const double relaxed = 0.10;
  std::vector<CheckReport> stencil{check_gradient_rotation_free(fx.gradient_seed),
                                   check_rotation_divergence_free(fx.rotation_seed),
                                   check_grad_div_rot_rot_laplacian(fx.f)};
  bool stencil_ok = d.report.at("div_r_ulp") <= kStencilUlps && d.report.at("rotbar_g_ulp") <= kStencilUlps;
  double worst_ulp = std::max(d.report.at("div_r_ulp"), d.report.at("rotbar_g_ulp"));
  for (const auto& r : stencil) {
    stencil_ok = stencil_ok && r.pass;
    worst_ulp = std::max(worst_ulp, r.residual);
  }
  const GaussianBump q(std::vector<double>(5, 0.0));
  std::vector<ScalarField> partials;
  for (std::size_t k = 0; k < 5; ++k) {
    partials.push_back(q.sample_partial(g, k));
  }
  const double commute = check_newton_partial_commute(q.sample(g), partials, fft_ball(), relaxed).residual;
  const double potential = check_potential_laplacian(fx.f, fft_ball(), relaxed).residual;
  const double recon = d.report.at("residual_l2_rel");
  const bool quad_ok = commute <= relaxed && potential <= relaxed && recon <= relaxed;
  return {stencil_ok && quad_ok,
          fmt("stencil worst %.3g ulp (limit 16); commutation %.3g, potential Laplacian %.3g, reconstruction %.3g "
              "(limit 0.10)",
              worst_ulp, commute, potential, recon)};
}

Outcome determinism() {
  auto run = [] {
    const DecompositionResult d = decompose(make_fixture("mixed", plane_grid(129)).f, direct_ball());
    return encode_field(d.g) + encode_field(d.r) + encode_field(d.F.G) + encode_field(d.F.R);
  };
  const std::string a = run();
  const std::string b = run();
  return {a == b, fmt("%zu bytes of g, r, G, R %s", a.size(), a == b ? "identical" : "DIFFER")};
}

} // namespace

int main() {
  set_warning_handler([](std::string_view) {});
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"stencil-exact identities, n = 2, 3, 4", stencil_suite},
      {"Levi-Civita curl curl equivalence", levi_civita_suite},
      {"reconstruction, mixed Gaussian, 129^2 direct", reconstruction},
      {"split purity", split_purity},
      {"Poisson consistency", poisson},
      {"Newton potential commutes with partials", commutation},
      {"three-dimensional classical cross-check, 49^3", classical_3d},
      {"five-dimensional smoke test, 9^5", five_dimensions},
      {"byte-identical repeated decomposition", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto t = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), since(t));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
