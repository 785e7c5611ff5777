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

#include "hhd/field_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <system_error>
#include <vector>

#include "hhd/errors.hpp"

namespace hhd {

namespace {

constexpr std::string_view kMagic = "HHNF1";
constexpr std::string_view kSeparator = "---\n";

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format bound");
  }
  return std::string(buf, end);
}

void append_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  char raw[8];
  std::memcpy(raw, &bits, 8);
  out.append(raw, 8);
}

double load_le(const char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, p, 8);
  if constexpr (std::endian::native == std::endian::big) {
    bits = __builtin_bswap64(bits);
  }
  return std::bit_cast<double>(bits);
}

std::span<const ScalarField> slices_of(const AnyField& field) {
  return std::visit(
      [](const auto& f) -> std::span<const ScalarField> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ScalarField>) {
          return {&f, 1};
        } else if constexpr (std::is_same_v<T, VectorField>) {
          return f.components();
        } else {
          return f.stored();
        }
      },
      field);
}

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> split_line(std::string_view line, std::size_t base) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') {
      ++i;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') {
      ++i;
    }
    if (i > start) {
      tokens.push_back({line.substr(start, i - start), base + start});
    }
  }
  return tokens;
}

std::size_t parse_count(const Token& t) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw FormatError("expected a non-negative integer, got '" + std::string(t.text) + "'", t.offset);
  }
  return v;
}

double parse_real(const Token& t) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw FormatError("expected a decimal number, got '" + std::string(t.text) + "'", t.offset);
  }
  if (!std::isfinite(v)) {
    throw FormatError("non-finite bound", t.offset);
  }
  return v;
}

} // namespace

const GridSpec& grid_of(const AnyField& field) {
  return std::visit([](const auto& f) -> const GridSpec& { return f.grid(); }, field);
}

std::string_view kind_name(const AnyField& field) {
  switch (field.index()) {
  case 0:
    return "scalar";
  case 1:
    return "vector";
  default:
    return "antisym";
  }
}

std::string encode_field(const AnyField& field) {
  const GridSpec& grid = grid_of(field);
  std::string out;
  out += kMagic;
  out += ' ';
  out += kind_name(field);
  out += ' ' + std::to_string(grid.n());
  for (std::size_t d : grid.dims()) {
    out += ' ' + std::to_string(d);
  }
  out += '\n';
  bool first = true;
  for (auto bounds : {grid.lower(), grid.upper()}) {
    for (double v : bounds) {
      if (!first) {
        out += ' ';
      }
      first = false;
      out += format_double(v);
    }
  }
  out += '\n';
  out += kSeparator;
  const auto slices = slices_of(field);
  out.reserve(out.size() + 8 * grid.node_count() * slices.size());
  for (const auto& s : slices) {
    for (double v : s.values()) {
      append_le(out, v);
    }
  }
  return out;
}

AnyField decode_field(std::string_view bytes) {
  const std::size_t eol1 = bytes.find('\n');
  if (bytes.substr(0, kMagic.size()) != kMagic || eol1 == std::string_view::npos) {
    throw FormatError("bad magic, expected HHNF1 header", 0);
  }
  const auto head = split_line(bytes.substr(0, eol1), 0);
  if (head.size() < 3 || head[0].text != kMagic) {
    throw FormatError("bad magic, expected HHNF1 header", 0);
  }
  const Token& kind = head[1];
  if (kind.text != "scalar" && kind.text != "vector" && kind.text != "antisym") {
    throw FormatError("unknown field kind '" + std::string(kind.text) + "'", kind.offset);
  }
  const std::size_t n = parse_count(head[2]);
  if (n < 2 || head.size() != 3 + n) {
    throw FormatError("header must list n >= 2 followed by n axis sizes", head[2].offset);
  }
  std::vector<std::size_t> dims(n);
  for (std::size_t k = 0; k < n; ++k) {
    dims[k] = parse_count(head[3 + k]);
  }

  const std::size_t line2 = eol1 + 1;
  const std::size_t eol2 = bytes.find('\n', line2);
  if (eol2 == std::string_view::npos) {
    throw FormatError("missing bounds line", line2);
  }
  const auto bound_tokens = split_line(bytes.substr(line2, eol2 - line2), line2);
  if (bound_tokens.size() != 2 * n) {
    throw FormatError("bounds line needs " + std::to_string(2 * n) + " numbers", line2);
  }
  std::vector<double> lower(n);
  std::vector<double> upper(n);
  for (std::size_t k = 0; k < n; ++k) {
    lower[k] = parse_real(bound_tokens[k]);
    upper[k] = parse_real(bound_tokens[n + k]);
  }

  const std::size_t sep = eol2 + 1;
  if (bytes.substr(sep, kSeparator.size()) != kSeparator) {
    throw FormatError("missing '---' separator", sep);
  }
  const std::size_t payload = sep + kSeparator.size();

  std::optional<GridSpec> grid;
  try {
    grid.emplace(dims, lower, upper);
  } catch (const std::exception& e) {
    throw FormatError(std::string("invalid grid: ") + e.what(), head[2].offset);
  }

  const std::size_t slices = kind.text == "scalar"   ? 1
                             : kind.text == "vector" ? n
                                                     : AntisymMatrixField::component_count(n);
  const std::size_t nodes = grid->node_count();
  const std::size_t expected = 8 * nodes * slices;
  if (bytes.size() - payload != expected) {
    throw FormatError("payload has " + std::to_string(bytes.size() - payload) + " bytes, dims require " +
                          std::to_string(expected),
                      payload);
  }

  std::vector<ScalarField> parts;
  parts.reserve(slices);
  const char* cursor = bytes.data() + payload;
  for (std::size_t c = 0; c < slices; ++c) {
    std::vector<double> values(nodes);
    for (std::size_t p = 0; p < nodes; ++p, cursor += 8) {
      values[p] = load_le(cursor);
    }
    parts.emplace_back(*grid, std::move(values));
  }
  if (kind.text == "scalar") {
    return std::move(parts.front());
  }
  if (kind.text == "vector") {
    return VectorField(*grid, std::move(parts));
  }
  return AntisymMatrixField(*grid, std::move(parts));
}

AnyField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_field(bytes);
}

void write_field(const AnyField& field, const std::filesystem::path& path) {
  const std::string bytes = encode_field(field);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "cannot open " + path.string() + " for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::system_error(errno, std::generic_category(), "write failed for " + path.string());
  }
}

} // namespace hhd
