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

#include "hhd/levi_civita.hpp"

#include <cmath>
#include <string>

#include "hhd/errors.hpp"

namespace hhd {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) {
    r *= base;
  }
  return r;
}

double factorial(std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 2; i <= k; ++i) {
    r *= static_cast<double>(i);
  }
  return r;
}

void require_supported(std::size_t n) {
  if (n < 2 || n > kMaxLeviCivitaDimension) {
    throw UnsupportedDimension("Levi-Civita rotation tensor is only built for n in 2.." +
                               std::to_string(kMaxLeviCivitaDimension) + ", got n = " + std::to_string(n));
  }
}

// Decodes a flat component index into its n-2 tensor indices (last index fastest).
void decode(std::size_t flat, std::size_t n, std::span<std::size_t> e) {
  for (std::size_t r = e.size(); r-- > 0;) {
    e[r] = flat % n;
    flat /= n;
  }
}

void accumulate(ScalarField& acc, bool& started, const ScalarField& term, int sign, Arith arith) {
  if (arith == Arith::magnitude) {
    if (!started) {
      acc = term;
      started = true;
    } else {
      acc += term;
    }
    return;
  }
  if (!started) {
    acc = term;
    if (sign < 0) {
      acc *= -1.0;
    }
    started = true;
  } else if (sign > 0) {
    acc += term;
  } else {
    acc -= term;
  }
}

} // namespace

int levi_civita(std::span<const std::size_t> indices) {
  const std::size_t n = indices.size();
  std::vector<bool> seen(n, false);
  for (std::size_t v : indices) {
    if (v >= n || seen[v]) {
      return 0;
    }
    seen[v] = true;
  }
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      inversions += indices[a] > indices[b] ? 1 : 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

LeviCivitaTensor::LeviCivitaTensor(const GridSpec& grid, std::vector<ScalarField> components)
    : grid_(grid), components_(std::move(components)) {
  if (components_.size() != ipow(grid_.n(), grid_.n() - 2)) {
    throw DataError("rank n-2 tensor needs n^(n-2) components");
  }
}

std::size_t LeviCivitaTensor::flat(std::span<const std::size_t> e) const {
  if (e.size() != rank()) {
    throw RangeError("tensor index has wrong rank");
  }
  std::size_t f = 0;
  for (std::size_t idx : e) {
    if (idx >= n()) {
      throw RangeError("tensor index out of range");
    }
    f = f * n() + idx;
  }
  return f;
}

LeviCivitaTensor curl_bar_levi_civita(const VectorField& f, Arith arith) {
  const std::size_t n = f.n();
  require_supported(n);
  const GridSpec& grid = f.grid();

  // d f_m / d x_l, indexed [l * n + m].
  std::vector<ScalarField> d;
  d.reserve(n * n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t m = 0; m < n; ++m) {
      d.push_back(partial(f[m], l, arith));
    }
  }

  const std::size_t count = ipow(n, n - 2);
  std::vector<ScalarField> comps;
  comps.reserve(count);
  std::vector<std::size_t> idx(n);
  for (std::size_t c = 0; c < count; ++c) {
    decode(c, n, std::span(idx).first(n - 2));
    ScalarField acc(grid);
    bool started = false;
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t m = 0; m < n; ++m) {
        idx[n - 2] = l;
        idx[n - 1] = m;
        const int eps = levi_civita(idx);
        if (eps != 0) {
          accumulate(acc, started, d[l * n + m], eps, arith);
        }
      }
    }
    comps.push_back(std::move(acc));
  }
  return LeviCivitaTensor(grid, std::move(comps));
}

VectorField curl_levi_civita(const LeviCivitaTensor& T, Arith arith) {
  const std::size_t n = T.n();
  require_supported(n);
  const GridSpec& grid = T.grid();
  const double scale = ((n % 2 == 1) ? 1.0 : -1.0) / factorial(n - 2);

  // d T_e / d x_m, indexed [e * n + m].
  std::vector<ScalarField> d;
  d.reserve(T.size() * n);
  for (std::size_t c = 0; c < T.size(); ++c) {
    for (std::size_t m = 0; m < n; ++m) {
      d.push_back(partial(T[c], m, arith));
    }
  }

  VectorField out(grid);
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < n; ++k) {
    ScalarField acc(grid);
    bool started = false;
    for (std::size_t c = 0; c < T.size(); ++c) {
      decode(c, n, std::span(idx).first(n - 2));
      idx[n - 2] = k;
      for (std::size_t m = 0; m < n; ++m) {
        idx[n - 1] = m;
        const int eps = levi_civita(idx);
        if (eps != 0) {
          accumulate(acc, started, d[c * n + m], eps, arith);
        }
      }
    }
    acc *= arith == Arith::magnitude ? std::abs(scale) : scale;
    out[k] = std::move(acc);
  }
  return out;
}

} // namespace hhd
