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

#include "acypart/model.hpp"

#include <cmath>
#include <unordered_map>

namespace acypart {

VarIndex LinearModel::add_variable(std::string name, Domain domain) {
  if (by_name_.count(name) != 0) {
    throw ModelError(ModelError::Kind::DuplicateName, "duplicate variable name '" + name + "'");
  }
  const VarIndex index = variables_.size();
  by_name_.emplace(name, index);
  variables_.push_back(Variable{std::move(name), domain});
  return index;
}

std::optional<VarIndex> LinearModel::find_variable(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

VarIndex LinearModel::variable_index(std::string_view name) const {
  if (auto index = find_variable(name)) return *index;
  throw ModelError(ModelError::Kind::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

std::optional<std::size_t> LinearModel::find_constraint(std::string_view name) const {
  auto it = constraint_by_name_.find(std::string(name));
  if (it == constraint_by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<Term> LinearModel::normalize(std::vector<Term> terms) const {
  std::vector<Term> merged;
  std::unordered_map<VarIndex, std::size_t> slot;
  for (const Term& t : terms) {
    if (t.var >= variables_.size()) {
      throw ModelError(ModelError::Kind::UnknownVariable, "term references undeclared variable #" + std::to_string(t.var));
    }
    auto [it, inserted] = slot.emplace(t.var, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  return merged;
}

void LinearModel::add_constraint(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
  if (constraint_by_name_.count(name) != 0) {
    throw ModelError(ModelError::Kind::DuplicateName, "duplicate constraint name '" + name + "'");
  }
  constraint_by_name_.emplace(name, constraints_.size());
  constraints_.push_back(Constraint{std::move(name), normalize(std::move(terms)), sense, rhs});
}

void LinearModel::set_objective(ObjectiveSense sense, std::vector<Term> terms, double constant) {
  objective_ = Objective{sense, normalize(std::move(terms)), constant};
}

std::size_t LinearModel::count_variables(VarType type) const {
  std::size_t count = 0;
  for (const auto& v : variables_) count += v.domain.type == type ? 1 : 0;
  return count;
}

std::optional<Rational> Assignment::get(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw ModelError(ModelError::Kind::UnrepresentableCoefficient, "coefficient is not finite");
  }
  if (value == std::floor(value) && std::fabs(value) < 9.0e15) return Rational(static_cast<std::int64_t>(value));
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  auto digits = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  while (exponent < 0 && digits % 2 == 0) {
    digits /= 2;
    ++exponent;
  }
  if (exponent >= 0 || exponent < -62) {
    throw ModelError(ModelError::Kind::UnrepresentableCoefficient, "coefficient does not fit an exact 64-bit rational");
  }
  return Rational(digits, std::int64_t{1} << (-exponent));
}

std::vector<Rational> resolve(const LinearModel& model, const Assignment& assignment) {
  std::vector<Rational> values;
  values.reserve(model.num_variables());
  for (const auto& v : model.variables()) {
    auto value = assignment.get(v.name);
    if (!value) throw ModelError(ModelError::Kind::UnknownVariable, "no value for variable '" + v.name + "'");
    values.push_back(*value);
  }
  return values;
}

Rational objective_value(const LinearModel& model, std::span<const Rational> values) {
  Rational total = exact_rational(model.objective().constant);
  for (const Term& t : model.objective().terms) total += exact_rational(t.coef) * values[t.var];
  return total;
}

namespace {

Rational nearest_integer(const Rational& r) {
  // floor(r + 1/2)
  const Rational shifted = r + Rational(1, 2);
  return Rational(floor_div(shifted.numerator(), shifted.denominator()));
}

}  // namespace

Evaluation evaluate(const LinearModel& model, const Assignment& assignment) {
  Evaluation result;
  const Rational tolerance(1, 1000000);
  std::vector<Rational> values;
  values.reserve(model.num_variables());
  for (const auto& v : model.variables()) {
    auto value = assignment.get(v.name);
    if (!value) {
      result.violated.push_back("missing value for variable " + v.name);
      values.emplace_back(0);
      continue;
    }
    Rational x = *value;
    if (v.domain.is_integral()) {
      const Rational r = nearest_integer(x);
      const Rational gap = x > r ? x - r : r - x;
      if (gap > tolerance) {
        result.violated.push_back("variable " + v.name + " = " + to_string(x) + " is not integral");
      } else {
        x = r;
      }
    }
    if (std::isfinite(v.domain.lb) && x < exact_rational(v.domain.lb)) {
      result.violated.push_back("variable " + v.name + " = " + to_string(x) + " below lower bound");
    }
    if (std::isfinite(v.domain.ub) && x > exact_rational(v.domain.ub)) {
      result.violated.push_back("variable " + v.name + " = " + to_string(x) + " above upper bound");
    }
    values.push_back(x);
  }

  for (const Constraint& c : model.constraints()) {
    Rational activity(0);
    for (const Term& t : c.terms) activity += exact_rational(t.coef) * values[t.var];
    const Rational rhs = exact_rational(c.rhs);
    bool ok = true;
    switch (c.sense) {
      case Sense::LessEqual: ok = activity <= rhs; break;
      case Sense::Equal: ok = activity == rhs; break;
      case Sense::GreaterEqual: ok = activity >= rhs; break;
    }
    if (!ok) result.violated.push_back(c.name);
  }
  result.objective = objective_value(model, values);
  result.feasible = result.violated.empty();
  return result;
}

}  // namespace acypart
