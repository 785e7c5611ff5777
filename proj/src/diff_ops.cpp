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

#include "hhd/diff_ops.hpp"

#include <cmath>
#include <string>

#include "hhd/errors.hpp"

namespace hhd {

namespace {

void require_axis(const GridSpec& grid, std::size_t axis) {
  if (axis >= grid.n()) {
    throw RangeError("axis " + std::to_string(axis) + " out of range for n = " + std::to_string(grid.n()));
  }
}

// a + b or a - b, or |a| + |b| for magnitudes (inputs already non-negative there).
ScalarField combine(ScalarField a, const ScalarField& b, bool subtract, Arith arith) {
  if (subtract && arith == Arith::value) {
    return a -= b;
  }
  return a += b;
}

} // namespace

ScalarField partial(const ScalarField& s, std::size_t axis, Arith arith) {
  const GridSpec& grid = s.grid();
  require_axis(grid, axis);
  const std::size_t d = grid.dim(axis);
  const std::size_t st = grid.stride(axis);
  const double inv2h = 1.0 / (2.0 * grid.spacing()[axis]);
  const auto in = s.values();
  ScalarField out(grid);
  auto o = out.values();
  const std::size_t count = grid.node_count();

  if (arith == Arith::value) {
    for (std::size_t p = 0; p < count; ++p) {
      const std::size_t i = grid.index_along(p, axis);
      if (i == 0) {
        o[p] = (-3.0 * in[p] + 4.0 * in[p + st] - in[p + 2 * st]) * inv2h;
      } else if (i + 1 == d) {
        o[p] = (3.0 * in[p] - 4.0 * in[p - st] + in[p - 2 * st]) * inv2h;
      } else {
        o[p] = (in[p + st] - in[p - st]) * inv2h;
      }
    }
  } else {
    for (std::size_t p = 0; p < count; ++p) {
      const std::size_t i = grid.index_along(p, axis);
      if (i == 0) {
        o[p] = (3.0 * std::abs(in[p]) + 4.0 * std::abs(in[p + st]) + std::abs(in[p + 2 * st])) * inv2h;
      } else if (i + 1 == d) {
        o[p] = (3.0 * std::abs(in[p]) + 4.0 * std::abs(in[p - st]) + std::abs(in[p - 2 * st])) * inv2h;
      } else {
        o[p] = (std::abs(in[p + st]) + std::abs(in[p - st])) * inv2h;
      }
    }
  }
  return out;
}

VectorField gradient(const ScalarField& G, Arith arith) {
  std::vector<ScalarField> comps;
  comps.reserve(G.grid().n());
  for (std::size_t k = 0; k < G.grid().n(); ++k) {
    comps.push_back(partial(G, k, arith));
  }
  return VectorField(G.grid(), std::move(comps));
}

ScalarField divergence(const VectorField& f, Arith arith) {
  ScalarField out = partial(f[0], 0, arith);
  for (std::size_t k = 1; k < f.n(); ++k) {
    out += partial(f[k], k, arith);
  }
  return out;
}

Jacobian jacobian(const VectorField& f) {
  const std::size_t n = f.n();
  Jacobian jac;
  jac.n = n;
  jac.J.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      jac.J.push_back(partial(f[i], j));
    }
  }
  jac.S.reserve(n * n);
  jac.A.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ScalarField& a = jac.J[i * n + j];
      const ScalarField& b = jac.J[j * n + i];
      jac.S.push_back(0.5 * (a + b));
      jac.A.push_back(0.5 * (a - b));
    }
  }
  return jac;
}

ScalarField rot_bar_ij(const VectorField& f, std::size_t i, std::size_t j, Arith arith) {
  require_axis(f.grid(), i);
  require_axis(f.grid(), j);
  if (i == j) {
    return ScalarField(f.grid());
  }
  return combine(partial(f[i], j, arith), partial(f[j], i, arith), true, arith);
}

AntisymMatrixField rot_bar(const VectorField& f, Arith arith) {
  const std::size_t n = f.n();
  std::vector<ScalarField> upper;
  upper.reserve(AntisymMatrixField::component_count(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      upper.push_back(rot_bar_ij(f, i, j, arith));
    }
  }
  return AntisymMatrixField(f.grid(), std::move(upper));
}

DensityBundle density_derivative(const VectorField& f) { return DensityBundle(divergence(f), rot_bar(f)); }

VectorField rot_ij(const ScalarField& R, std::size_t i, std::size_t j, Arith arith) {
  const GridSpec& grid = R.grid();
  require_axis(grid, i);
  require_axis(grid, j);
  if (i == j) {
    throw DomainError("rot_ij needs two distinct axes, got (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  VectorField out(grid);
  out[i] = partial(R, j, arith);
  out[j] = partial(R, i, arith);
  if (arith == Arith::value) {
    out[j] *= -1.0;
  }
  return out;
}

VectorField rot(const AntisymMatrixField& R, Arith arith) {
  const GridSpec& grid = R.grid();
  const std::size_t n = grid.n();
  VectorField out(grid);
  for (std::size_t k = 0; k < n; ++k) {
    bool first = true;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == k) {
        continue;
      }
      // R_km is stored as +upper(k,m) above the diagonal and -upper(m,k) below it.
      const bool negate = m < k;
      ScalarField term = partial(negate ? R.upper(m, k) : R.upper(k, m), m, arith);
      if (first) {
        out[k] = std::move(term);
        if (negate && arith == Arith::value) {
          out[k] *= -1.0;
        }
        first = false;
      } else {
        out[k] = combine(std::move(out[k]), term, negate, arith);
      }
    }
  }
  return out;
}

VectorField rot_half_sum(const AntisymMatrixField& R) {
  const GridSpec& grid = R.grid();
  const std::size_t n = grid.n();
  VectorField sum(grid);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) {
        sum += rot_ij(R.entry(i, j), i, j);
      }
    }
  }
  return 0.5 * std::move(sum);
}

VectorField potential_derivative(const PotentialBundle& F) { return gradient(F.G) + rot(F.R); }

ScalarField laplacian(const ScalarField& s, Arith arith) {
  ScalarField out = partial(partial(s, 0, arith), 0, arith);
  for (std::size_t k = 1; k < s.grid().n(); ++k) {
    out += partial(partial(s, k, arith), k, arith);
  }
  return out;
}

VectorField laplacian(const VectorField& f, Arith arith) {
  std::vector<ScalarField> comps;
  comps.reserve(f.n());
  for (std::size_t k = 0; k < f.n(); ++k) {
    comps.push_back(laplacian(f[k], arith));
  }
  return VectorField(f.grid(), std::move(comps));
}

VectorField grad_div_plus_rot_rotbar(const VectorField& f, Arith arith) {
  return gradient(divergence(f, arith), arith) + rot(rot_bar(f, arith), arith);
}

} // namespace hhd
