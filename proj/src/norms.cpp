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

#include "hhd/norms.hpp"

#include <algorithm>
#include <cmath>

namespace hhd {

namespace {

struct Accum {
  double sum_sq = 0.0;
  double max = 0.0;

  void add(const ScalarField& s, std::size_t margin) {
    const GridSpec& grid = s.grid();
    for (std::size_t p = 0; p < grid.node_count(); ++p) {
      if (margin == 0 || grid.is_interior(p, margin)) {
        sum_sq += s[p] * s[p];
        max = std::max(max, std::abs(s[p]));
      }
    }
  }

  Norms finish(const GridSpec& grid) const { return {std::sqrt(sum_sq * grid.cell_volume()), max}; }
};

double ratio(double num, double den) {
  if (den == 0.0) {
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return num / den;
}

double ulp_ratio_slice(const ScalarField& residual, const ScalarField& scale, std::size_t margin) {
  const GridSpec& grid = residual.grid();
  double worst = 0.0;
  for (std::size_t p = 0; p < grid.node_count(); ++p) {
    if (margin != 0 && !grid.is_interior(p, margin)) {
      continue;
    }
    const double r = std::abs(residual[p]);
    const double s = scale[p];
    if (s == 0.0) {
      if (r != 0.0) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    worst = std::max(worst, r / (kEpsilon * s));
  }
  return worst;
}

} // namespace

Norms norms(const ScalarField& s, std::size_t margin) {
  Accum a;
  a.add(s, margin);
  return a.finish(s.grid());
}

Norms norms(const VectorField& f, std::size_t margin) {
  Accum a;
  for (const auto& c : f.components()) {
    a.add(c, margin);
  }
  return a.finish(f.grid());
}

Norms norms(const AntisymMatrixField& m, std::size_t margin) {
  Accum a;
  for (const auto& c : m.stored()) {
    a.add(c, margin);
  }
  return a.finish(m.grid());
}

double relative_l2(const ScalarField& a, const ScalarField& b, std::size_t margin) {
  return ratio(norms(a - b, margin).l2, norms(b, margin).l2);
}

double relative_l2(const VectorField& a, const VectorField& b, std::size_t margin) {
  return ratio(norms(a - b, margin).l2, norms(b, margin).l2);
}

double relative_l2(const AntisymMatrixField& a, const AntisymMatrixField& b, std::size_t margin) {
  AntisymMatrixField diff = a;
  diff -= b;
  return ratio(norms(diff, margin).l2, norms(b, margin).l2);
}

double ulp_ratio(const ScalarField& residual, const ScalarField& scale, std::size_t margin) {
  return ulp_ratio_slice(residual, scale, margin);
}

double ulp_ratio(const VectorField& residual, const VectorField& scale, std::size_t margin) {
  double worst = 0.0;
  for (std::size_t k = 0; k < residual.n(); ++k) {
    worst = std::max(worst, ulp_ratio_slice(residual[k], scale[k], margin));
  }
  return worst;
}

double ulp_ratio(const AntisymMatrixField& residual, const AntisymMatrixField& scale, std::size_t margin) {
  double worst = 0.0;
  for (std::size_t c = 0; c < residual.stored().size(); ++c) {
    worst = std::max(worst, ulp_ratio_slice(residual.stored()[c], scale.stored()[c], margin));
  }
  return worst;
}

double observed_order(double coarse_error, double fine_error, double refinement_ratio) {
  if (fine_error == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::log(coarse_error / fine_error) / std::log(refinement_ratio);
}

} // namespace hhd
