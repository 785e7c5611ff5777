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

#pragma once

#include <functional>
#include <vector>

#include "hhd/field.hpp"
#include "hhd/newton.hpp"

namespace hhd::detail {

/// Kernel weights for every node offset o in prod[-(d_k - 1), d_k - 1], last axis fastest.
struct OffsetTable {
  std::vector<std::size_t> extent; // 2 d_k - 1
  std::vector<std::size_t> stride;
  std::vector<double> weight;
};

/// `weight_at(distance)` supplies the quadrature weight for a nonzero offset; `centre` the
/// weight of the zero offset.
OffsetTable make_offset_table(const GridSpec& grid, const std::function<double(double)>& weight_at, double centre);

/// out(x) = sum_xi table(xi - x) * q(xi).
std::vector<double> convolve_direct(const GridSpec& grid, const OffsetTable& table, std::span<const double> q);
std::vector<double> convolve_fft(const GridSpec& grid, const OffsetTable& table, std::span<const double> q);

} // namespace hhd::detail
