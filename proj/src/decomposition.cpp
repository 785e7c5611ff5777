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

#include "hhd/decomposition.hpp"

#include "hhd/diff_ops.hpp"
#include "hhd/errors.hpp"
#include "hhd/levi_civita.hpp"
#include "hhd/norms.hpp"

namespace hhd {

namespace {

void fill_report(DecompositionResult& res, const VectorField& f, const DecompositionOptions& options,
                 const QuadratureConfig& cfg) {
  const std::size_t m = options.residual_margin;
  auto& rep = res.report;

  const Norms f_in = norms(f, m);
  const Norms res_in = norms(res.residual, m);
  const Norms res_all = norms(res.residual, 0);
  const Norms f_all = norms(f, 0);
  rep["f_l2"] = f_in.l2;
  rep["g_l2"] = norms(res.g, m).l2;
  rep["r_l2"] = norms(res.r, m).l2;
  rep["residual_l2_rel"] = f_in.l2 > 0.0 ? res_in.l2 / f_in.l2 : res_in.l2;
  rep["residual_max"] = res_in.max;
  rep["residual_l2_rel_all"] = f_all.l2 > 0.0 ? res_all.l2 / f_all.l2 : res_all.l2;
  rep["residual_max_all"] = res_all.max;

  const ScalarField div_r = divergence(res.r);
  const Norms div_n = norms(div_r, kComposedMargin);
  rep["div_r_l2"] = div_n.l2;
  rep["div_r_max"] = div_n.max;
  if (!res.rotation_skipped) {
    rep["div_r_ulp"] = ulp_ratio(div_r, divergence(rot(res.F.R, Arith::magnitude), Arith::magnitude),
                                 kComposedMargin);
  }

  const AntisymMatrixField rb = rot_bar(res.g);
  const Norms rb_n = norms(rb, kInteriorMargin);
  rep["rotbar_g_l2"] = rb_n.l2;
  rep["rotbar_g_max"] = rb_n.max;
  rep["rotbar_g_ulp"] =
      ulp_ratio(rb, rot_bar(gradient(res.F.G, Arith::magnitude), Arith::magnitude), kInteriorMargin);

  bool decays = check_decay(res.phi.gamma, cfg.decay_fraction).decays;
  for (const auto& slice : res.phi.rho.stored()) {
    decays = decays && check_decay(slice, cfg.decay_fraction).decays;
  }
  rep["density_decays"] = decays ? 1.0 : 0.0;
}

} // namespace

DecompositionResult decompose(const VectorField& f, const QuadratureConfig& cfg,
                              const DecompositionOptions& options) {
  const GridSpec& grid = f.grid();
  DensityBundle phi = density_derivative(f);
  ScalarField G = newton_apply(phi.gamma, cfg);
  VectorField g = gradient(G);

  AntisymMatrixField R(grid);
  VectorField r(grid);
  if (options.skip_rotation) {
    r = f - g;
  } else {
    R = newton_apply_bundle(DensityBundle(ScalarField(grid), phi.rho), cfg).R;
    r = rot(R);
  }
  VectorField residual = f - g - r;

  DecompositionResult res{std::move(g),        std::move(r), PotentialBundle(std::move(G), std::move(R)),
                          std::move(phi),      std::move(residual), {}, options.skip_rotation};
  fill_report(res, f, options, cfg);
  return res;
}

DecompositionResult decompose_classical_3d(const VectorField& f, const QuadratureConfig& cfg,
                                           const DecompositionOptions& options) {
  const GridSpec& grid = f.grid();
  if (grid.n() != 3) {
    throw UnsupportedDimension("the classical decomposition path is three-dimensional only");
  }
  const ScalarField gamma = divergence(f);
  const LeviCivitaTensor curl_f = curl_bar_levi_civita(f);

  const ScalarField phi_scalar = coulomb_apply(gamma, cfg);
  std::vector<ScalarField> a;
  for (std::size_t e = 0; e < 3; ++e) {
    a.push_back(coulomb_apply(curl_f[e], cfg));
  }
  const LeviCivitaTensor A(grid, a);

  VectorField g = -1.0 * gradient(phi_scalar);
  VectorField r = curl_levi_civita(A);

  AntisymMatrixField R(grid);
  R.upper(0, 1) = a[2];
  R.upper(0, 2) = -1.0 * a[1];
  R.upper(1, 2) = a[0];
  AntisymMatrixField rho(grid);
  rho.upper(0, 1) = -1.0 * curl_f[2];
  rho.upper(0, 2) = curl_f[1];
  rho.upper(1, 2) = -1.0 * curl_f[0];

  VectorField residual = f - g - r;
  DecompositionResult res{std::move(g),
                          std::move(r),
                          PotentialBundle(-1.0 * phi_scalar, std::move(R)),
                          DensityBundle(gamma, std::move(rho)),
                          std::move(residual),
                          {},
                          false};
  fill_report(res, f, options, cfg);
  return res;
}

} // namespace hhd
