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

#include <charconv>
#include <cmath>
#include <sstream>

#include "acypart/model.hpp"

namespace acypart {

namespace {

constexpr std::size_t kTermsPerLine = 8;

std::string format_number(double value) {
  if (!std::isfinite(value)) {
    throw ModelError(ModelError::Kind::UnrepresentableCoefficient, "coefficient is not finite");
  }
  if (value == std::floor(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, end);
}

std::string format_bound(double value) {
  if (std::isinf(value)) return value > 0 ? "+inf" : "-inf";
  return format_number(value);
}

void write_terms(std::ostream& os, const LinearModel& model, const std::vector<Term>& terms) {
  if (terms.empty()) {
    if (model.num_variables() > 0) os << " 0 " << model.variable(0).name;
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) os << "\n  ";
    const double coef = terms[i].coef;
    const double magnitude = std::fabs(coef);
    if (!std::isfinite(coef)) {
      throw ModelError(ModelError::Kind::UnrepresentableCoefficient,
                       "coefficient of " + model.variable(terms[i].var).name + " is not finite");
    }
    if (coef < 0) {
      os << " -";
    } else if (i > 0) {
      os << " +";
    }
    if (magnitude != 1.0) os << ' ' << format_number(magnitude);
    os << ' ' << model.variable(terms[i].var).name;
  }
}

const char* sense_token(Sense sense) {
  switch (sense) {
    case Sense::LessEqual: return "<=";
    case Sense::Equal: return "=";
    case Sense::GreaterEqual: return ">=";
  }
  return "=";
}

}  // namespace

std::string write_lp(const LinearModel& model) {
  std::ostringstream os;
  os << "\\ Problem: " << model.name() << '\n';
  const Objective& objective = model.objective();
  os << (objective.sense == ObjectiveSense::Minimize ? "Minimize" : "Maximize") << '\n';
  os << " obj:";
  if (!objective.terms.empty()) write_terms(os, model, objective.terms);
  if (objective.constant != 0.0) {
    os << (objective.constant < 0 ? " - " : (objective.terms.empty() ? " " : " + "))
       << format_number(std::fabs(objective.constant));
  }
  os << '\n';

  if (model.num_constraints() > 0) {
    os << "Subject To\n";
    for (const Constraint& c : model.constraints()) {
      os << ' ' << c.name << ':';
      write_terms(os, model, c.terms);
      os << ' ' << sense_token(c.sense) << ' ' << format_number(c.rhs) << '\n';
    }
  }

  std::ostringstream bounds;
  std::ostringstream binaries;
  std::ostringstream generals;
  for (const Variable& v : model.variables()) {
    if (v.domain.type == VarType::Binary) {
      binaries << ' ' << v.name << '\n';
      continue;
    }
    if (v.domain.type == VarType::Integer) generals << ' ' << v.name << '\n';
    if (std::isnan(v.domain.lb) || std::isnan(v.domain.ub)) {
      throw ModelError(ModelError::Kind::UnrepresentableCoefficient, "bound of " + v.name + " is NaN");
    }
    if (v.domain.lb == 0.0 && std::isinf(v.domain.ub) && v.domain.ub > 0) continue;
    if (std::isinf(v.domain.lb) && v.domain.lb < 0 && std::isinf(v.domain.ub) && v.domain.ub > 0) {
      bounds << ' ' << v.name << " free\n";
      continue;
    }
    bounds << ' ' << format_bound(v.domain.lb) << " <= " << v.name << " <= " << format_bound(v.domain.ub) << '\n';
  }
  if (!bounds.str().empty()) os << "Bounds\n" << bounds.str();
  if (!binaries.str().empty()) os << "Binaries\n" << binaries.str();
  if (!generals.str().empty()) os << "Generals\n" << generals.str();
  os << "End\n";
  return os.str();
}

}  // namespace acypart
