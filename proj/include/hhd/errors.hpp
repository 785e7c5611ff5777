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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhd {

/// Index outside 1..n or node outside the grid.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Argument is well-typed but mathematically meaningless (e.g. a rotation plane (i,i)).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Operation not available for this spatial dimension.
class UnsupportedDimension : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Non-finite input values or inconsistent field shapes.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Kernel evaluated on one of its singular points.
class SingularityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed HHNF1 file; carries the byte offset where parsing failed.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

} // namespace hhd
