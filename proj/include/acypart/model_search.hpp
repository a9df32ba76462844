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

// Exhaustive optimizer for small pure-integer LinearModels: depth-first
// enumeration over the variables in declaration order with bound
// propagation on every constraint and an objective bound from the current
// variable bounds. It knows nothing about graphs, so optima it reports for a
// formulation are independent of the combinatorial solvers in exact.hpp.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "acypart/model.hpp"

namespace acypart {

struct Fixing {
  VarIndex var = 0;
  std::int64_t value = 0;
};

enum class SearchStatus { Optimal, Infeasible, NodeLimit };

struct SearchResult {
  SearchStatus status = SearchStatus::Infeasible;
  // Objective in the model's own sense, constant included.
  std::optional<Rational> objective;
  std::vector<std::int64_t> values;
  std::uint64_t nodes = 0;

  Assignment assignment(const LinearModel& model) const;
};

class EnumerativeSolver {
 public:
  /// Throws ModelError(Unsupported) for continuous variables, unbounded
  /// integer variables or non-integral coefficients.
  explicit EnumerativeSolver(const LinearModel& model);

  /// `max_nodes == 0` means no limit.
  SearchResult solve(std::span<const Fixing> fixed = {}, std::uint64_t max_nodes = 0) const;

  std::size_t num_variables() const { return lb_.size(); }

 private:
  struct Row {
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    bool has_lo = false;
    bool has_hi = false;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
  };

  std::vector<std::int64_t> lb_;
  std::vector<std::int64_t> ub_;
  std::vector<std::int64_t> cost_;  // minimization form
  std::int64_t constant_ = 0;
  bool maximize_ = false;
  std::vector<Row> rows_;
  std::vector<std::vector<std::size_t>> rows_of_var_;

  friend class SearchState;
};

}  // namespace acypart
