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

#include "hhd/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <set>

#include "hhd/decomposition.hpp"
#include "hhd/diff_ops.hpp"
#include "hhd/errors.hpp"
#include "hhd/levi_civita.hpp"
#include "hhd/norms.hpp"

namespace hhd {

namespace {

constexpr std::array<CheckInfo, 7> kRegistry = {{
    {"gradient_rotation_free", "gradient fields are rotation-free", ToleranceClass::stencil},
    {"rotation_divergence_free", "rotation fields are divergence-free", ToleranceClass::stencil},
    {"grad_div_rot_rot_laplacian", "grad div f + rot rot_bar f equals the Laplacian of f", ToleranceClass::stencil},
    {"levi_civita_curl_curl", "(-1)^n curl curl_bar f equals rot rot_bar f", ToleranceClass::stencil},
    {"newton_partial_commute", "the Newton potential commutes with partial derivatives", ToleranceClass::quadrature},
    {"potential_laplacian",
     "density derivative of the potential derivative equals the Laplacian of the potential; "
     "the Laplacian inverts the Newton potential",
     ToleranceClass::quadrature},
    {"reconstruction", "g + r reconstructs f with g rotation-free and r divergence-free", ToleranceClass::quadrature},
}};

// Each required statement and the check that covers it.
constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kCoverage = {{
    {"gradient fields are rotation-free", "gradient_rotation_free"},
    {"rotation fields are divergence-free", "rotation_divergence_free"},
    {"the Newton potential commutes with partial derivatives", "newton_partial_commute"},
    {"the Laplacian inverts the Newton potential", "potential_laplacian"},
    {"grad div + rot rot_bar is the Laplacian", "grad_div_rot_rot_laplacian"},
    {"Levi-Civita curl curl agrees with rot rot_bar", "levi_civita_curl_curl"},
    {"density derivative of the potential derivative is the Laplacian", "potential_laplacian"},
    {"the gradient and rotation fields sum to f", "reconstruction"},
}};

constexpr std::array<std::string_view, 8> kStatements = {
    kCoverage[0].first, kCoverage[1].first, kCoverage[2].first, kCoverage[3].first,
    kCoverage[4].first, kCoverage[5].first, kCoverage[6].first, kCoverage[7].first,
};

const CheckInfo& info(std::string_view name) {
  for (const auto& c : kRegistry) {
    if (c.name == name) {
      return c;
    }
  }
  throw std::invalid_argument("unknown check '" + std::string(name) + "'");
}

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CheckReport start_report(std::string_view name, const GridSpec& grid) {
  const CheckInfo& ci = info(name);
  CheckReport r;
  r.name = std::string(ci.name);
  r.statement = std::string(ci.statement);
  r.grid = grid.describe();
  r.tolerance_class = ci.tolerance_class;
  r.tolerance = ci.tolerance_class == ToleranceClass::stencil ? kStencilUlps : kQuadratureTolerance;
  return r;
}

void finish_stencil(CheckReport& r, double ulps, Norms abs_norms, const Timer& t) {
  r.residual = ulps;
  r.residual_l2 = abs_norms.l2;
  r.residual_max = abs_norms.max;
  r.pass = ulps <= r.tolerance;
  r.runtime_seconds = t.seconds();
}

struct SlotError {
  double err_sq = 0.0;
  double ref_sq = 0.0;

  void add(const ScalarField& a, const ScalarField& ref, std::size_t margin) {
    const double e = norms(a - ref, margin).l2;
    const double n = norms(ref, margin).l2;
    err_sq += e * e;
    ref_sq += n * n;
  }

  double relative() const {
    if (ref_sq == 0.0) {
      return err_sq == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::sqrt(err_sq / ref_sq);
  }
};

double interior_mean(const ScalarField& s, std::size_t margin) {
  const GridSpec& g = s.grid();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    if (g.is_interior(p, margin)) {
      sum += s[p];
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

// Scalar probe with exact partials for the commutation check.
struct ScalarProbe {
  ScalarField q;
  std::vector<ScalarField> partials;
};

ScalarProbe commute_probe(std::string_view fixture, const GridSpec& grid, std::uint64_t seed) {
  const std::size_t n = grid.n();
  std::unique_ptr<SmoothScalar> fn;
  if (fixture == "zero") {
    return {ScalarField(grid), std::vector<ScalarField>(n, ScalarField(grid))};
  }
  if (fixture == "random-smooth") {
    fn = std::make_unique<RandomSmooth>(n, seed);
  } else if (fixture == "pure-rotation") {
    std::vector<double> centre(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      centre[k] = (k % 2 == 0 ? 0.37 : -0.21) * static_cast<double>(k + 1);
    }
    fn = std::make_unique<GaussianBump>(centre);
  } else {
    fn = std::make_unique<GaussianBump>(std::vector<double>(n, 0.0));
  }
  ScalarProbe p{fn->sample(grid), {}};
  for (std::size_t k = 0; k < n; ++k) {
    p.partials.push_back(fn->sample_partial(grid, k));
  }
  return p;
}

ScalarField scalar_probe(const Fixture& fx) {
  ScalarField s = fx.gradient_seed;
  for (const auto& slice : fx.rotation_seed.stored()) {
    s += slice;
  }
  return s;
}

AntisymMatrixField antisym_probe(const Fixture& fx) {
  AntisymMatrixField m = fx.rotation_seed;
  std::size_t c = 0;
  for (std::size_t i = 0; i < m.n(); ++i) {
    for (std::size_t j = i + 1; j < m.n(); ++j) {
      m.upper(i, j) += static_cast<double>(++c) / static_cast<double>(m.n()) * fx.gradient_seed;
    }
  }
  return m;
}

} // namespace

std::string_view to_string(ToleranceClass t) { return t == ToleranceClass::stencil ? "stencil" : "quadrature"; }

CheckReport check_gradient_rotation_free(const ScalarField& G) {
  Timer t;
  CheckReport r = start_report("gradient_rotation_free", G.grid());
  const VectorField g = gradient(G);
  const AntisymMatrixField res = rot_bar(g);
  double ulps = ulp_ratio(res, rot_bar(gradient(G, Arith::magnitude), Arith::magnitude), kInteriorMargin);
  r.notes.push_back("rot_bar(grad G) ulp ratio " + std::to_string(ulps));
  if (G.grid().n() <= kMaxLeviCivitaDimension) {
    const LeviCivitaTensor curl = curl_bar_levi_civita(g);
    const LeviCivitaTensor scale = curl_bar_levi_civita(gradient(G, Arith::magnitude), Arith::magnitude);
    double lc = 0.0;
    for (std::size_t c = 0; c < curl.size(); ++c) {
      lc = std::max(lc, ulp_ratio(curl[c], scale[c], kInteriorMargin));
    }
    r.notes.push_back("Levi-Civita curl_bar(grad G) ulp ratio " + std::to_string(lc));
    ulps = std::max(ulps, lc);
  }
  finish_stencil(r, ulps, norms(res, kInteriorMargin), t);
  return r;
}

CheckReport check_rotation_divergence_free(const AntisymMatrixField& R) {
  Timer t;
  CheckReport r = start_report("rotation_divergence_free", R.grid());
  const ScalarField res = divergence(rot(R));
  const ScalarField scale = divergence(rot(R, Arith::magnitude), Arith::magnitude);
  finish_stencil(r, ulp_ratio(res, scale, kComposedMargin), norms(res, kComposedMargin), t);
  return r;
}

CheckReport check_grad_div_rot_rot_laplacian(const VectorField& f) {
  Timer t;
  CheckReport r = start_report("grad_div_rot_rot_laplacian", f.grid());
  const VectorField lhs = grad_div_plus_rot_rotbar(f);
  const VectorField rhs = laplacian(f);
  const VectorField scale = grad_div_plus_rot_rotbar(f, Arith::magnitude) + laplacian(f, Arith::magnitude);
  const VectorField res = lhs - rhs;
  finish_stencil(r, ulp_ratio(res, scale, kComposedMargin), norms(res, kComposedMargin), t);
  return r;
}

CheckReport check_levi_civita_curl_curl(const VectorField& f) {
  Timer t;
  CheckReport r = start_report("levi_civita_curl_curl", f.grid());
  const std::size_t n = f.n();
  if (n > kMaxLeviCivitaDimension) {
    throw UnsupportedDimension("Levi-Civita comparison needs n <= 4");
  }
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  const VectorField lhs = sign * curl_levi_civita(curl_bar_levi_civita(f));
  const VectorField rhs = rot(rot_bar(f));
  const VectorField scale = curl_levi_civita(curl_bar_levi_civita(f, Arith::magnitude), Arith::magnitude) +
                            rot(rot_bar(f, Arith::magnitude), Arith::magnitude);
  const VectorField res = lhs - rhs;
  finish_stencil(r, ulp_ratio(res, scale, kComposedMargin), norms(res, kComposedMargin), t);
  return r;
}

CheckReport check_newton_partial_commute(const ScalarField& q, std::span<const ScalarField> exact_partials,
                                         const QuadratureConfig& cfg, double tolerance) {
  Timer t;
  CheckReport r = start_report("newton_partial_commute", q.grid());
  r.tolerance = tolerance;
  const std::size_t n = q.grid().n();
  if (!exact_partials.empty() && exact_partials.size() != n) {
    throw DataError("need one exact partial per axis");
  }
  const ScalarField Nq = newton_apply(q, cfg);
  SlotError err;
  double max_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const ScalarField lhs = partial(Nq, k);
    ScalarField rhs = newton_apply(exact_partials.empty() ? partial(q, k) : exact_partials[k], cfg);
    // The counterterm makes the two sides differ by a constant; compare modulo constants.
    const double shift = interior_mean(lhs - rhs, kComposedMargin);
    for (std::size_t p = 0; p < rhs.size(); ++p) {
      rhs[p] += shift;
    }
    err.add(lhs, rhs, kComposedMargin);
    max_abs = std::max(max_abs, norms(lhs - rhs, kComposedMargin).max);
  }
  r.notes.push_back(exact_partials.empty() ? "discrete partials of q" : "analytic partials of q");
  r.notes.push_back("compared modulo an additive constant");
  r.residual = err.relative();
  r.residual_l2 = std::sqrt(err.err_sq);
  r.residual_max = max_abs;
  r.pass = r.residual <= r.tolerance;
  r.runtime_seconds = t.seconds();
  return r;
}

CheckReport check_potential_laplacian(const VectorField& f, const QuadratureConfig& cfg, double tolerance) {
  Timer t;
  CheckReport r = start_report("potential_laplacian", f.grid());
  r.tolerance = tolerance;
  const DensityBundle phi = density_derivative(f);
  const PotentialBundle F = newton_apply_bundle(phi, cfg);
  const DensityBundle dd = density_derivative(potential_derivative(F));

  const ScalarField lap_G = laplacian(F.G);
  std::vector<ScalarField> lap_R;
  for (const auto& slice : F.R.stored()) {
    lap_R.push_back(laplacian(slice));
  }

  SlotError identity;
  SlotError inverse;
  identity.add(dd.gamma, lap_G, kComposedMargin);
  inverse.add(lap_G, phi.gamma, kComposedMargin);
  for (std::size_t c = 0; c < lap_R.size(); ++c) {
    identity.add(dd.rho.stored()[c], lap_R[c], kComposedMargin);
    inverse.add(lap_R[c], phi.rho.stored()[c], kComposedMargin);
  }
  const double a = identity.relative();
  const double b = inverse.relative();
  r.notes.push_back("relative L2 of density_derivative(potential_derivative F) - Laplacian F: " + std::to_string(a));
  r.notes.push_back("relative L2 of Laplacian F - densities: " + std::to_string(b));
  r.residual = std::max(a, b);
  r.residual_l2 = std::sqrt(std::max(identity.err_sq, inverse.err_sq));
  r.residual_max = 0.0;
  r.pass = r.residual <= r.tolerance;
  r.runtime_seconds = t.seconds();
  return r;
}

CheckReport check_reconstruction(const VectorField& f, const QuadratureConfig& cfg, double tolerance,
                                 const std::optional<GridSpec>& evaluate_on) {
  Timer t;
  CheckReport r = start_report("reconstruction", evaluate_on ? *evaluate_on : f.grid());
  r.tolerance = tolerance;
  const DecompositionResult d = decompose(f, cfg);
  double rel = d.report.at("residual_l2_rel");
  double res_l2 = d.report.at("residual_l2_rel") * d.report.at("f_l2");
  double res_max = d.report.at("residual_max");
  if (evaluate_on) {
    const VectorField fi = crop(f, *evaluate_on);
    const VectorField res = fi - crop(d.g, *evaluate_on) - crop(d.r, *evaluate_on);
    const Norms rn = norms(res, kComposedMargin);
    rel = rn.l2 / norms(fi, kComposedMargin).l2;
    res_l2 = rn.l2;
    res_max = rn.max;
    r.notes.push_back("decomposed on padded grid " + f.grid().describe());
  }
  const double div_ulp = d.report.at("div_r_ulp");
  const double rb_ulp = d.report.at("rotbar_g_ulp");
  r.notes.push_back("div r ulp ratio " + std::to_string(div_ulp));
  r.notes.push_back("rot_bar g ulp ratio " + std::to_string(rb_ulp));
  if (d.report.at("density_decays") == 0.0) {
    r.notes.push_back("densities do not decay toward the faces");
  }
  r.residual = rel;
  r.residual_l2 = res_l2;
  r.residual_max = res_max;
  r.pass = rel <= tolerance && div_ulp <= kStencilUlps && rb_ulp <= kStencilUlps;
  r.runtime_seconds = t.seconds();
  return r;
}

std::span<const CheckInfo> check_registry() { return kRegistry; }

std::span<const std::string_view> required_statements() { return kStatements; }

std::vector<std::string> missing_statements() {
  std::vector<std::string> missing;
  for (const auto& [statement, check] : kCoverage) {
    const bool found = std::any_of(kRegistry.begin(), kRegistry.end(), [&](const CheckInfo& c) { return c.name == check; });
    if (!found) {
      missing.emplace_back(statement);
    }
  }
  return missing;
}

std::vector<CheckReport> run_all(std::span<const GridSpec> grids, std::span<const std::string> fixtures,
                                 const QuadratureConfig& cfg, const RunOptions& options) {
  std::set<std::string> selected(options.checks.begin(), options.checks.end());
  for (const auto& name : selected) {
    info(name);
  }
  auto wanted = [&](std::string_view name) { return selected.empty() || selected.count(std::string(name)) > 0; };

  std::vector<CheckReport> reports;
  for (const GridSpec& grid : grids) {
    for (const std::string& fixture_name : fixtures) {
      const Fixture fx = make_fixture(fixture_name, grid, options.plane, options.seed);
      auto tag = [&](CheckReport r) {
        r.fixture = fixture_name;
        r.seed = options.seed;
        reports.push_back(std::move(r));
      };

      if (wanted("gradient_rotation_free")) {
        tag(check_gradient_rotation_free(scalar_probe(fx)));
      }
      if (wanted("rotation_divergence_free")) {
        tag(check_rotation_divergence_free(antisym_probe(fx)));
      }
      if (wanted("grad_div_rot_rot_laplacian")) {
        tag(check_grad_div_rot_rot_laplacian(fx.f));
      }
      if (wanted("levi_civita_curl_curl") && grid.n() <= kMaxLeviCivitaDimension) {
        tag(check_levi_civita_curl_curl(fx.f));
      }
      if (!fx.decays) {
        continue;
      }

      // Quadrature checks, optionally repeated on the refined grid for an observed order.
      auto quadrature = [&](std::string_view name, auto&& run) {
        if (!wanted(name)) {
          return;
        }
        CheckReport coarse = run(grid);
        if (options.refine) {
          const CheckReport fine = run(grid.refined());
          coarse.refined_residual = fine.residual;
          coarse.observed_order = observed_order(coarse.residual, fine.residual);
          coarse.runtime_seconds += fine.runtime_seconds;
          const bool converging = fine.residual == 0.0 || *coarse.observed_order >= kMinObservedOrder;
          if (!converging) {
            coarse.notes.push_back("error does not decay at order >= 1 under refinement");
          }
          coarse.pass = coarse.pass && fine.pass && converging;
        }
        tag(std::move(coarse));
      };

      quadrature("newton_partial_commute", [&](const GridSpec& gs) {
        const ScalarProbe probe = commute_probe(fixture_name, gs, options.seed);
        return check_newton_partial_commute(probe.q, probe.partials, cfg, options.quadrature_tolerance);
      });
      quadrature("potential_laplacian", [&](const GridSpec& gs) {
        const Fixture local = &gs == &grid ? Fixture(fx) : make_fixture(fixture_name, gs, options.plane, options.seed);
        return check_potential_laplacian(local.f, cfg, options.quadrature_tolerance);
      });
      quadrature("reconstruction", [&](const GridSpec& gs) {
        if (options.padding > 1.0) {
          const GridSpec big = gs.padded(options.padding);
          const Fixture local = make_fixture(fixture_name, big, options.plane, options.seed);
          return check_reconstruction(local.f, cfg, options.quadrature_tolerance, gs);
        }
        const Fixture local = &gs == &grid ? Fixture(fx) : make_fixture(fixture_name, gs, options.plane, options.seed);
        return check_reconstruction(local.f, cfg, options.quadrature_tolerance);
      });
    }
  }

  const auto missing = missing_statements();
  if (!missing.empty()) {
    CheckReport r;
    r.name = "coverage";
    r.statement = "every required statement has a check";
    r.pass = false;
    r.notes = missing;
    reports.push_back(std::move(r));
  }
  return reports;
}

bool all_passed(std::span<const CheckReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::string reports_to_json(std::span<const CheckReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["check"] = r.name;
    j["statement"] = r.statement;
    j["grid"] = r.grid;
    j["fixture"] = r.fixture;
    j["seed"] = r.seed;
    j["tolerance_class"] = to_string(r.tolerance_class);
    j["residual"] = r.residual;
    j["residual_l2"] = r.residual_l2;
    j["residual_max"] = r.residual_max;
    j["tolerance"] = r.tolerance;
    j["refined_residual"] = r.refined_residual ? nlohmann::ordered_json(*r.refined_residual) : nullptr;
    j["observed_order"] = r.observed_order ? nlohmann::ordered_json(*r.observed_order) : nullptr;
    j["pass"] = r.pass;
    j["runtime_seconds"] = r.runtime_seconds;
    j["notes"] = r.notes;
    arr.push_back(std::move(j));
  }
  return arr.dump(2);
}

} // namespace hhd
