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

#include <cmath>
#include <sstream>
#include <string>

#include "acypart/model.hpp"

namespace acypart {

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      flush();
    } else if (ch == '=') {
      flush();
      tokens.emplace_back("=");
    } else {
      current.push_back(ch);
    }
  }
  flush();
  return tokens;
}

Rational parse_value(const std::string& token, bool integral, const std::string& name, std::size_t line) {
  Rational exact;
  if (parse_exact_decimal(token, exact)) {
    if (!integral) return exact;
    const Rational shifted = exact + Rational(1, 2);
    const Rational nearest(floor_div(shifted.numerator(), shifted.denominator()));
    const Rational gap = exact > nearest ? exact - nearest : nearest - exact;
    if (gap > Rational(1, 1000000)) {
      throw ModelError(ModelError::Kind::NonIntegralValue, "line " + std::to_string(line) + ": value " + token +
                                                               " of integral variable " + name + " is not integral");
    }
    return nearest;
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw ParseError(line, "invalid value '" + token + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, "value '" + token + "' is not finite");
  if (integral) {
    const double nearest = std::nearbyint(value);
    if (std::fabs(value - nearest) > kIntegralityTolerance) {
      throw ModelError(ModelError::Kind::NonIntegralValue, "line " + std::to_string(line) + ": value " + token +
                                                               " of integral variable " + name + " is not integral");
    }
    return Rational(static_cast<std::int64_t>(nearest));
  }
  constexpr std::int64_t kScale = 1000000000;
  return Rational(std::llround(value * static_cast<double>(kScale)), kScale);
}

}  // namespace

SolutionReadResult read_solution(const LinearModel& model, std::string_view text) {
  SolutionReadResult result;
  std::size_t line_no = 0;
  std::size_t start = 0;
  std::vector<char> seen(model.num_variables(), 0);
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::string name;
    std::string value;
    if (tokens.size() == 2 && tokens[0] != "=" && tokens[1] != "=") {
      name = tokens[0];
      value = tokens[1];
    } else if (tokens.size() == 3 && tokens[1] == "=" && tokens[0] != "=" && tokens[2] != "=") {
      name = tokens[0];
      value = tokens[2];
    } else {
      throw ParseError(line_no, "expected '<variable> <value>' or '<variable> = <value>'");
    }
    auto index = model.find_variable(name);
    if (!index) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": unknown variable '" + name + "' ignored");
      continue;
    }
    const Variable& var = model.variable(*index);
    if (seen[*index]) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": variable '" + name + "' repeated; last value kept");
    }
    seen[*index] = 1;
    result.assignment.set(name, parse_value(value, var.domain.is_integral(), name, line_no));
    if (end == text.size()) break;
  }

  std::size_t missing = 0;
  std::string first_missing;
  for (std::size_t i = 0; i < model.num_variables(); ++i) {
    if (seen[i]) continue;
    if (missing == 0) first_missing = model.variable(i).name;
    ++missing;
    result.assignment.set(model.variable(i).name, Rational(0));
  }
  if (missing > 0) {
    result.warnings.push_back(std::to_string(missing) + " variable(s) missing from the solution defaulted to 0 (first: " +
                              first_missing + ")");
  }
  return result;
}

std::string write_solution(const LinearModel& model, const Assignment& assignment) {
  std::ostringstream os;
  for (const Variable& v : model.variables()) {
    auto value = assignment.get(v.name);
    const Rational r = value.value_or(Rational(0));
    os << v.name << ' ';
    if (r.denominator() == 1) {
      os << r.numerator();
    } else {
      os.precision(17);
      os << boost::rational_cast<double>(r);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace acypart
