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

// Solver-agnostic mixed-integer linear model, CPLEX LP emission, solution
// ingestion and exact feasibility evaluation.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acypart/types.hpp"

namespace acypart {

enum class VarType { Binary, Integer, Continuous };

struct Domain {
  VarType type = VarType::Binary;
  double lb = 0.0;
  double ub = 1.0;

  static Domain binary() { return {VarType::Binary, 0.0, 1.0}; }
  static Domain integer(double lb, double ub) { return {VarType::Integer, lb, ub}; }
  static Domain continuous(double lb, double ub) { return {VarType::Continuous, lb, ub}; }

  bool is_integral() const { return type != VarType::Continuous; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

struct Variable {
  std::string name;
  Domain domain;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using VarIndex = std::size_t;

struct Term {
  VarIndex var = 0;
  double coef = 0.0;
  friend bool operator==(const Term&, const Term&) = default;
};

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class ObjectiveSense { Minimize, Maximize };

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct Objective {
  ObjectiveSense sense = ObjectiveSense::Minimize;
  std::vector<Term> terms;
  double constant = 0.0;
  friend bool operator==(const Objective&, const Objective&) = default;
};

class ModelError : public Error {
 public:
  enum class Kind { DuplicateName, UnknownVariable, UnrepresentableCoefficient, NonIntegralValue, Unsupported };

  ModelError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class LinearModel {
 public:
  explicit LinearModel(std::string name = "model") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  /// Throws ModelError(DuplicateName) for a repeated name.
  VarIndex add_variable(std::string name, Domain domain);
  std::optional<VarIndex> find_variable(std::string_view name) const;
  VarIndex variable_index(std::string_view name) const;

  /// Terms on the same variable are merged; zero coefficients are dropped.
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs);
  void set_objective(ObjectiveSense sense, std::vector<Term> terms, double constant = 0.0);

  std::span<const Variable> variables() const { return variables_; }
  const Variable& variable(VarIndex i) const { return variables_[i]; }
  std::span<const Constraint> constraints() const { return constraints_; }
  const Objective& objective() const { return objective_; }
  std::optional<std::size_t> find_constraint(std::string_view name) const;

  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t count_variables(VarType type) const;

  friend bool operator==(const LinearModel& a, const LinearModel& b) {
    return a.name_ == b.name_ && a.variables_ == b.variables_ && a.constraints_ == b.constraints_ &&
           a.objective_ == b.objective_;
  }

 private:
  std::vector<Term> normalize(std::vector<Term> terms) const;

  std::string name_;
  std::vector<Variable> variables_;
  std::unordered_map<std::string, VarIndex> by_name_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, std::size_t> constraint_by_name_;
  Objective objective_;
};

// Variable name -> exact value.
class Assignment {
 public:
  void set(const std::string& name, const Rational& value) { values_[name] = value; }
  void set(const std::string& name, std::int64_t value) { values_[name] = Rational(value); }
  std::optional<Rational> get(std::string_view name) const;
  bool contains(std::string_view name) const { return values_.find(std::string(name)) != values_.end(); }
  std::size_t size() const { return values_.size(); }
  const std::map<std::string, Rational, std::less<>>& values() const { return values_; }

 private:
  std::map<std::string, Rational, std::less<>> values_;
};

/// Exact rational value of a finite double. Throws
/// ModelError(UnrepresentableCoefficient) for inf/nan or values that need
/// more than 62 bits of numerator or denominator.
Rational exact_rational(double value);

inline constexpr double kIntegralityTolerance = 1e-6;

/// CPLEX LP text. Byte-identical for equal models.
std::string write_lp(const LinearModel& model);

struct SolutionReadResult {
  Assignment assignment;
  std::vector<std::string> warnings;
};

/// Reads `<name> <value>` or `<name> = <value>` lines; `#` starts a comment.
/// Integral variables are rounded when within kIntegralityTolerance of an
/// integer, otherwise ModelError(NonIntegralValue) is thrown. Missing
/// variables default to 0 and unknown names are skipped, both with a warning.
/// Throws ParseError with the 1-based line number on malformed lines.
SolutionReadResult read_solution(const LinearModel& model, std::string_view text);

/// `<name> <value>` lines for every variable in declaration order.
std::string write_solution(const LinearModel& model, const Assignment& assignment);

struct Evaluation {
  bool feasible = false;
  std::vector<std::string> violated;
  Rational objective{0};
};

/// Exact check of bounds, integrality and every constraint. Integral
/// variables are first rounded to the nearest integer when within the
/// integrality tolerance.
Evaluation evaluate(const LinearModel& model, const Assignment& assignment);

/// Values aligned with model.variables(); throws ModelError(UnknownVariable)
/// for a variable missing from the assignment.
std::vector<Rational> resolve(const LinearModel& model, const Assignment& assignment);

Rational objective_value(const LinearModel& model, std::span<const Rational> values);

}  // namespace acypart
