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

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <system_error>

#include "hhd/errors.hpp"
#include "hhd/field.hpp"
#include "hhd/field_io.hpp"
#include "hhd/grid.hpp"

using namespace hhd;

namespace {

std::uint64_t bits_of(double v) {
  std::uint64_t b = 0;
  std::memcpy(&b, &v, sizeof b);
  return b;
}

ScalarField random_scalar(const GridSpec& g, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  ScalarField s(g);
  for (std::size_t p = 0; p < g.node_count(); ++p) {
    s[p] = dist(rng);
  }
  return s;
}

} // namespace

TEST_CASE("grid geometry") {
  const GridSpec g({3, 5}, {0.0, -1.0}, {1.0, 1.0});
  CHECK(g.n() == 2);
  CHECK(g.node_count() == 15);
  CHECK(g.spacing()[0] == 0.5);
  CHECK(g.spacing()[1] == 0.5);
  CHECK(g.stride(1) == 1);
  CHECK(g.stride(0) == 5);
  CHECK(g.cell_volume() == 0.25);
  CHECK(g.coordinate(1, 4) == 1.0);

  const std::array<std::size_t, 2> idx{2, 3};
  const std::size_t flat = g.flat_index(idx);
  CHECK(flat == 13);
  std::array<std::size_t, 2> back{};
  g.multi_index(flat, back);
  CHECK(back == idx);
  std::array<double, 2> x{};
  g.position(flat, x);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.5);
  CHECK(g.is_interior(g.flat_index(std::array<std::size_t, 2>{1, 2}), 1));
  CHECK_FALSE(g.is_interior(g.flat_index(std::array<std::size_t, 2>{1, 0}), 1));
  CHECK_FALSE(g.is_interior(g.flat_index(std::array<std::size_t, 2>{1, 1}), 2));

  CHECK_THROWS_AS(g.flat_index(std::array<std::size_t, 2>{3, 0}), RangeError);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec({5}, {0.0}, {1.0}), UnsupportedDimension);
  CHECK_THROWS_AS(GridSpec({2, 5}, {0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({5, 5}, {0.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({5, 5}, {0.0, 0.0}, {1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("refined and padded grids keep the old nodes") {
  const GridSpec g = GridSpec::cube(2, 5, -1.0, 1.0);
  const GridSpec r = g.refined();
  CHECK(r.dim(0) == 9);
  CHECK(r.spacing()[0] == doctest::Approx(g.spacing()[0] / 2));
  const GridSpec p = g.padded(2.0);
  CHECK(p.spacing()[0] == g.spacing()[0]);
  CHECK(p.dim(0) > g.dim(0));

  std::mt19937_64 rng(3);
  VectorField f(g, {random_scalar(g, rng), random_scalar(g, rng)});
  const VectorField big = zero_extend(f, p);
  const VectorField back = crop(big, g);
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t q = 0; q < g.node_count(); ++q) {
      CHECK(back[k][q] == f[k][q]);
    }
  }
}

TEST_CASE("antisymmetric accessor") {
  const GridSpec g = GridSpec::cube(3, 3, 0.0, 1.0);
  AntisymMatrixField m(g);
  CHECK(m.stored().size() == 3);
  const std::array<std::size_t, 3> node{1, 1, 1};
  const std::size_t p = g.flat_index(node);
  m.upper(0, 1)[p] = 5.0;
  m.upper(0, 2)[p] = 0.25;
  CHECK(antisym_get(m, 1, 0, node) == -5.0);
  CHECK(antisym_get(m, 0, 1, node) == 5.0);
  CHECK(antisym_get(m, 2, 2, node) == 0.0);
  CHECK(antisym_get(m, 0, 2, node) == 0.25);
  CHECK_THROWS_AS(antisym_get(m, 3, 0, node), RangeError);
  CHECK_THROWS_AS(m.upper(1, 0), RangeError);
  CHECK(AntisymMatrixField::component_count(5) == 10);
  CHECK(AntisymMatrixField::pair_index(4, 0, 1) == 0);
  CHECK(AntisymMatrixField::pair_index(4, 1, 2) == 3);
  CHECK(AntisymMatrixField::pair_index(4, 2, 3) == 5);
}

TEST_CASE("field arithmetic checks grids") {
  const GridSpec a = GridSpec::cube(2, 3, 0.0, 1.0);
  const GridSpec b = GridSpec::cube(2, 4, 0.0, 1.0);
  ScalarField x(a);
  const ScalarField y(b);
  CHECK_THROWS_AS(x += y, DataError);
}

TEST_CASE("HHNF1 round trip is bit exact") {
  std::mt19937_64 rng(11);
  const GridSpec g({4, 3, 5}, {-1.0, 0.1, 2.0}, {1.0, 0.7, 3.25});
  const ScalarField s = random_scalar(g, rng);
  VectorField v(g, {random_scalar(g, rng), random_scalar(g, rng), random_scalar(g, rng)});
  AntisymMatrixField m(g, {random_scalar(g, rng), random_scalar(g, rng), random_scalar(g, rng)});

  const auto dir = std::filesystem::temp_directory_path() / "hhd_test_io";
  std::filesystem::create_directories(dir);
  write_field(v, dir / "v.hhnf");
  const auto back = read_field(dir / "v.hhnf");
  const auto& vb = std::get<VectorField>(back);
  CHECK(vb.grid() == g);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t p = 0; p < g.node_count(); ++p) {
      CHECK(bits_of(vb[k][p]) == bits_of(v[k][p]));
    }
  }
  CHECK(encode_field(std::get<ScalarField>(decode_field(encode_field(s)))) == encode_field(s));
  CHECK(encode_field(std::get<AntisymMatrixField>(decode_field(encode_field(m)))) == encode_field(m));
  std::filesystem::remove_all(dir);
}

TEST_CASE("HHNF1 layout") {
  const GridSpec g({3, 3, 3}, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
  ScalarField s(g);
  s[0] = 0.1;
  const std::string bytes = encode_field(s);
  CHECK(bytes.rfind("HHNF1 scalar 3 3 3 3\n", 0) == 0);
  const std::size_t sep = bytes.find("\n---\n");
  REQUIRE(sep != std::string::npos);
  const std::size_t payload = sep + 5;
  CHECK(bytes.size() - payload == 27 * 8);
  // 0.1 as little-endian IEEE-754 binary64
  const unsigned char expected[8] = {0x9a, 0x99, 0x99, 0x99, 0x99, 0x99, 0xb9, 0x3f};
  CHECK(std::memcmp(bytes.data() + payload, expected, 8) == 0);

  VectorField v(g);
  const std::string vb = encode_field(v);
  CHECK(vb.size() - (vb.find("\n---\n") + 5) == 3 * 27 * 8);
}

TEST_CASE("HHNF1 errors carry offsets") {
  const GridSpec g = GridSpec::cube(2, 3, 0.0, 1.0);
  const std::string good = encode_field(ScalarField(g));

  auto offset_of = [](const std::string& text) -> std::size_t {
    try {
      decode_field(text);
    } catch (const FormatError& e) {
      return e.offset();
    }
    FAIL("expected FormatError");
    return 0;
  };

  std::string bad_magic = good;
  bad_magic[4] = '2';
  CHECK(offset_of(bad_magic) == 0);

  std::string bad_kind = good;
  bad_kind.replace(6, 6, "tensor");
  CHECK(offset_of(bad_kind) == 6);

  const std::string truncated = good.substr(0, good.size() - 8);
  CHECK(offset_of(truncated) == good.find("\n---\n") + 5);

  std::string no_sep = good;
  no_sep.replace(no_sep.find("\n---\n"), 5, "\n===\n");
  CHECK_THROWS_AS(decode_field(no_sep), FormatError);

  std::string bad_bound = good;
  const std::size_t line2 = bad_bound.find('\n') + 1;
  bad_bound.replace(line2, 1, "x");
  CHECK(offset_of(bad_bound) == line2);

  CHECK_THROWS_AS(read_field("/nonexistent/path.hhnf"), std::system_error);
}
