// Copyright 2026 The acypart Authors
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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace acypart {

using Vertex = std::int32_t;
using PartId = std::int32_t;
using Weight = std::int64_t;

// Exact rational used for the imbalance ratio and for model evaluation.
using Rational = boost::rational<std::int64_t>;

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses a non-negative decimal ("0.3", "1", "2.50") or fraction ("1/3")
/// into an exact rational. Throws ParseError on anything else.
Rational parse_ratio(std::string_view text);

/// Parses a signed decimal with optional exponent ("-1.5e-3") exactly.
/// Returns false when the value does not fit an int64 numerator/denominator.
bool parse_exact_decimal(std::string_view text, Rational& out);

std::string to_string(const Rational& r);

inline Weight floor_div(Weight a, Weight b) {
  Weight q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Weight ceil_div(Weight a, Weight b) { return -floor_div(-a, b); }

}  // namespace acypart
