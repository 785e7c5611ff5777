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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "hhd/field.hpp"

namespace hhd {

/// Any field kind that can be stored in an HHNF1 file.
using AnyField = std::variant<ScalarField, VectorField, AntisymMatrixField>;

const GridSpec& grid_of(const AnyField& field);
std::string_view kind_name(const AnyField& field);

/// HHNF1 layout:
///
///     HHNF1 <kind> <n> <dim_1> ... <dim_n>\n
///     <lower_1> ... <lower_n> <upper_1> ... <upper_n>\n
///     ---\n
///     <payload>
///
/// `kind` is one of scalar, vector, antisym. The payload is little-endian float64, row-major,
/// with components concatenated: vector components k = 1..n, antisymmetric components (i,j)
/// with i < j in lexicographic order. Bounds are written in shortest round-trip decimal form.
std::string encode_field(const AnyField& field);

/// Parses an in-memory HHNF1 image. Throws FormatError with the failing byte offset.
AnyField decode_field(std::string_view bytes);

AnyField read_field(const std::filesystem::path& path);
void write_field(const AnyField& field, const std::filesystem::path& path);

} // namespace hhd
