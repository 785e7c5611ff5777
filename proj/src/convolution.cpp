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

#include "convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

#include "parallel.hpp"

namespace hhd::detail {

OffsetTable make_offset_table(const GridSpec& grid, const std::function<double(double)>& weight_at, double centre) {
  const std::size_t n = grid.n();
  OffsetTable t;
  t.extent.resize(n);
  t.stride.resize(n);
  std::size_t total = 1;
  for (std::size_t k = n; k-- > 0;) {
    t.extent[k] = 2 * grid.dim(k) - 1;
    t.stride[k] = total;
    total *= t.extent[k];
  }
  t.weight.resize(total);
  const auto h = grid.spacing();
  for (std::size_t idx = 0; idx < total; ++idx) {
    double r2 = 0.0;
    bool origin = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto o = static_cast<long long>((idx / t.stride[k]) % t.extent[k]) - static_cast<long long>(grid.dim(k) - 1);
      origin = origin && o == 0;
      const double dx = static_cast<double>(o) * h[k];
      r2 += dx * dx;
    }
    t.weight[idx] = origin ? centre : weight_at(std::sqrt(r2));
  }
  return t;
}

std::vector<double> convolve_direct(const GridSpec& grid, const OffsetTable& table, std::span<const double> q) {
  const std::size_t n = grid.n();
  const std::size_t count = grid.node_count();
  const std::size_t len = grid.dim(n - 1);
  const std::size_t rows = count / len;
  std::vector<double> out(count, 0.0);

  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> x(n);
    std::vector<std::size_t> row_index(n > 1 ? n - 1 : 1);
    for (std::size_t p = begin; p < end; ++p) {
      grid.multi_index(p, x);
      double total = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        // Table position of the first input node of this row relative to x.
        std::size_t base = len - 1 - x[n - 1];
        std::size_t rem = r;
        for (std::size_t k = n - 1; k-- > 0;) {
          const std::size_t xi = rem % grid.dim(k);
          rem /= grid.dim(k);
          base += (xi + grid.dim(k) - 1 - x[k]) * table.stride[k];
        }
        const double* w = table.weight.data() + base;
        const double* v = q.data() + r * len;
        double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
        std::size_t j = 0;
        for (; j + 4 <= len; j += 4) {
          a0 += w[j] * v[j];
          a1 += w[j + 1] * v[j + 1];
          a2 += w[j + 2] * v[j + 2];
          a3 += w[j + 3] * v[j + 3];
        }
        for (; j < len; ++j) {
          a0 += w[j] * v[j];
        }
        total += (a0 + a1) + (a2 + a3);
      }
      out[p] = total;
    }
  });
  return out;
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
    if (!ptr) {
      throw std::bad_alloc();
    }
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  void* ptr;
};

struct FftwPlan {
  explicit FftwPlan(fftw_plan p) : plan(p) {}
  ~FftwPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
  fftw_plan plan;
};

} // namespace

std::vector<double> convolve_fft(const GridSpec& grid, const OffsetTable& table, std::span<const double> q) {
  const std::size_t n = grid.n();
  std::vector<int> padded(n);
  std::vector<std::size_t> pstride(n);
  std::size_t real_count = 1;
  for (std::size_t k = n; k-- > 0;) {
    padded[k] = static_cast<int>(2 * grid.dim(k));
    pstride[k] = real_count;
    real_count *= static_cast<std::size_t>(padded[k]);
  }
  const std::size_t complex_count = real_count / static_cast<std::size_t>(padded[n - 1]) *
                                    (static_cast<std::size_t>(padded[n - 1]) / 2 + 1);

  FftwBuffer kernel_real(sizeof(double) * real_count);
  FftwBuffer data_real(sizeof(double) * real_count);
  FftwBuffer kernel_hat(sizeof(fftw_complex) * complex_count);
  FftwBuffer data_hat(sizeof(fftw_complex) * complex_count);
  auto* kr = static_cast<double*>(kernel_real.ptr);
  auto* dr = static_cast<double*>(data_real.ptr);
  auto* kh = static_cast<fftw_complex*>(kernel_hat.ptr);
  auto* dh = static_cast<fftw_complex*>(data_hat.ptr);

  std::unique_ptr<FftwPlan> fwd_kernel;
  std::unique_ptr<FftwPlan> fwd_data;
  std::unique_ptr<FftwPlan> inverse;
  {
    std::lock_guard lock(planner_mutex());
    const int rank = static_cast<int>(n);
    fwd_kernel = std::make_unique<FftwPlan>(fftw_plan_dft_r2c(rank, padded.data(), kr, kh, FFTW_ESTIMATE));
    fwd_data = std::make_unique<FftwPlan>(fftw_plan_dft_r2c(rank, padded.data(), dr, dh, FFTW_ESTIMATE));
    inverse = std::make_unique<FftwPlan>(fftw_plan_dft_c2r(rank, padded.data(), dh, dr, FFTW_ESTIMATE));
  }

  std::fill(kr, kr + real_count, 0.0);
  std::fill(dr, dr + real_count, 0.0);
  const std::size_t table_count = table.weight.size();
  for (std::size_t idx = 0; idx < table_count; ++idx) {
    std::size_t at = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto o = static_cast<long long>((idx / table.stride[k]) % table.extent[k]) -
                     static_cast<long long>(grid.dim(k) - 1);
      const auto m = static_cast<long long>(padded[k]);
      at += static_cast<std::size_t>((o + m) % m) * pstride[k];
    }
    kr[at] = table.weight[idx];
  }
  std::vector<std::size_t> x(n);
  for (std::size_t p = 0; p < grid.node_count(); ++p) {
    grid.multi_index(p, x);
    std::size_t at = 0;
    for (std::size_t k = 0; k < n; ++k) {
      at += x[k] * pstride[k];
    }
    dr[at] = q[p];
  }

  fftw_execute(fwd_kernel->plan);
  fftw_execute(fwd_data->plan);
  for (std::size_t i = 0; i < complex_count; ++i) {
    const std::complex<double> a(kh[i][0], kh[i][1]);
    const std::complex<double> b(dh[i][0], dh[i][1]);
    const std::complex<double> c = a * b;
    dh[i][0] = c.real();
    dh[i][1] = c.imag();
  }
  fftw_execute(inverse->plan);

  // The kernel is even in every offset, so the circular convolution equals the correlation
  // sum_xi table(xi - x) q(xi) on the unpadded nodes.
  const double norm = 1.0 / static_cast<double>(real_count);
  std::vector<double> out(grid.node_count());
  for (std::size_t p = 0; p < grid.node_count(); ++p) {
    grid.multi_index(p, x);
    std::size_t at = 0;
    for (std::size_t k = 0; k < n; ++k) {
      at += x[k] * pstride[k];
    }
    out[p] = dr[at] * norm;
  }
  return out;
}

} // namespace hhd::detail
