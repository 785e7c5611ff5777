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

#include "hhd/newton.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "convolution.hpp"
#include "hhd/diagnostics.hpp"
#include "hhd/errors.hpp"

namespace hhd {

namespace {

void require_finite(const ScalarField& q) {
  for (double v : q.values()) {
    if (!std::isfinite(v)) {
      throw DataError("density contains NaN or Inf");
    }
  }
}

double ball_radius(std::size_t n, double volume) {
  return std::pow(volume / unit_ball_volume(n), 1.0 / static_cast<double>(n));
}

void warn_if_truncated(const ScalarField& q, double fraction) {
  const DecayCheck d = check_decay(q, fraction);
  if (!d.decays) {
    std::ostringstream os;
    os << "density does not decay toward the grid boundary (face max " << d.boundary_max << ", interior max "
       << d.interior_max << "); the truncated integral may be inaccurate";
    warn(os.str());
  }
}

std::vector<double> convolve(const GridSpec& grid, const detail::OffsetTable& table, std::span<const double> q,
                             Backend backend) {
  return backend == Backend::fft ? detail::convolve_fft(grid, table, q) : detail::convolve_direct(grid, table, q);
}

} // namespace

double unit_ball_volume(std::size_t n) {
  const double half = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

KernelParams KernelParams::for_dimension(std::size_t n) {
  if (n < 2) {
    throw UnsupportedDimension("the Newton kernel is defined for n >= 2");
  }
  return KernelParams{n, hhd::unit_ball_volume(n)};
}

double KernelParams::profile(double r) const {
  if (n == 2) {
    return std::log(r) / (2.0 * std::numbers::pi);
  }
  const double dn = static_cast<double>(n);
  return std::pow(r, 2.0 - dn) / (dn * (2.0 - dn) * unit_ball_volume);
}

double KernelParams::ball_integral(double volume) const {
  const double a = ball_radius(n, volume);
  if (n == 2) {
    return 0.5 * a * a * std::log(a) - 0.25 * a * a;
  }
  return a * a / (2.0 * (2.0 - static_cast<double>(n)));
}

double kernel(std::span<const double> x, std::span<const double> xi, const KernelParams& params) {
  if (x.size() != params.n || xi.size() != params.n) {
    throw RangeError("kernel points must have n coordinates");
  }
  double d2 = 0.0;
  double r2 = 0.0;
  for (std::size_t k = 0; k < params.n; ++k) {
    d2 += (x[k] - xi[k]) * (x[k] - xi[k]);
    r2 += xi[k] * xi[k];
  }
  if (d2 == 0.0) {
    throw SingularityError("kernel evaluated at xi == x");
  }
  if (r2 == 0.0) {
    throw SingularityError("kernel evaluated at xi == 0");
  }
  return params.profile(std::sqrt(d2)) - params.profile(std::sqrt(r2));
}

std::string_view to_string(SelfCell s) { return s == SelfCell::ball ? "ball" : "exclude"; }
std::string_view to_string(Backend b) { return b == Backend::fft ? "fft" : "direct"; }

SelfCell parse_self_cell(std::string_view text) {
  if (text == "ball") {
    return SelfCell::ball;
  }
  if (text == "exclude") {
    return SelfCell::exclude;
  }
  throw std::invalid_argument("self-cell must be 'ball' or 'exclude', got '" + std::string(text) + "'");
}

Backend parse_backend(std::string_view text) {
  if (text == "direct") {
    return Backend::direct;
  }
  if (text == "fft") {
    return Backend::fft;
  }
  throw std::invalid_argument("backend must be 'direct' or 'fft', got '" + std::string(text) + "'");
}

DecayCheck check_decay(const ScalarField& q, double fraction) {
  DecayCheck d;
  const GridSpec& grid = q.grid();
  for (std::size_t p = 0; p < grid.node_count(); ++p) {
    const double v = std::abs(q[p]);
    if (grid.is_interior(p, 1)) {
      d.interior_max = std::max(d.interior_max, v);
    } else {
      d.boundary_max = std::max(d.boundary_max, v);
    }
  }
  d.decays = d.boundary_max <= fraction * d.interior_max || d.boundary_max == 0.0;
  return d;
}

ScalarField newton_apply(const ScalarField& q, const QuadratureConfig& cfg, Arith arith) {
  require_finite(q);
  const GridSpec& grid = q.grid();
  const KernelParams params = KernelParams::for_dimension(grid.n());
  const double dv = grid.cell_volume();
  const double self = cfg.self_cell == SelfCell::ball ? params.ball_integral(dv) : 0.0;
  const bool magnitude = arith == Arith::magnitude;
  if (!magnitude) {
    warn_if_truncated(q, cfg.decay_fraction);
  }

  auto weight = [&](double r) {
    const double w = params.profile(r) * dv;
    return magnitude ? std::abs(w) : w;
  };
  const auto table = detail::make_offset_table(grid, weight, magnitude ? std::abs(self) : self);

  std::vector<double> input(q.values().begin(), q.values().end());
  if (magnitude) {
    for (double& v : input) {
      v = std::abs(v);
    }
  }
  std::vector<double> out = convolve(grid, table, input, magnitude ? Backend::direct : cfg.backend);

  if (cfg.counterterm) {
    // Constant in x: sum over xi of profile(|xi|) q(xi) dv, the xi = 0 cell treated like the
    // self cell.
    std::vector<double> xi(grid.n());
    double c = 0.0;
    for (std::size_t p = 0; p < grid.node_count(); ++p) {
      grid.position(p, xi);
      double r2 = 0.0;
      for (double v : xi) {
        r2 += v * v;
      }
      const double w = r2 == 0.0 ? (magnitude ? std::abs(self) : self) : weight(std::sqrt(r2));
      c += w * input[p];
    }
    for (double& v : out) {
      v = magnitude ? v + c : v - c;
    }
  }
  return ScalarField(grid, std::move(out));
}

PotentialBundle newton_apply_bundle(const DensityBundle& density, const QuadratureConfig& cfg) {
  ScalarField G = newton_apply(density.gamma, cfg);
  std::vector<ScalarField> upper;
  upper.reserve(density.rho.stored().size());
  for (const auto& slice : density.rho.stored()) {
    upper.push_back(newton_apply(slice, cfg));
  }
  return PotentialBundle(std::move(G), AntisymMatrixField(density.rho.grid(), std::move(upper)));
}

ScalarField coulomb_apply(const ScalarField& q, const QuadratureConfig& cfg) {
  const GridSpec& grid = q.grid();
  if (grid.n() != 3) {
    throw UnsupportedDimension("the classical 1/(4 pi r) potential is three-dimensional only");
  }
  require_finite(q);
  warn_if_truncated(q, cfg.decay_fraction);
  const double dv = grid.cell_volume();
  const double a = ball_radius(3, dv);
  const double self = cfg.self_cell == SelfCell::ball ? 0.5 * a * a : 0.0;
  const auto table = detail::make_offset_table(
      grid, [dv](double r) { return dv / (4.0 * std::numbers::pi * r); }, self);
  return ScalarField(grid, convolve(grid, table, q.values(), cfg.backend));
}

} // namespace hhd
