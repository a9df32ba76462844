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

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "acypart/types.hpp"

namespace acypart {

// Vertex x qubit incidence: which qubits each vertex acts on.
class QubitMatrix {
 public:
  QubitMatrix() = default;
  QubitMatrix(std::size_t num_vertices, std::size_t num_qubits)
      : num_qubits_(num_qubits), rows_(num_vertices) {}

  void set(Vertex v, std::size_t qubit) {
    auto& row = rows_[static_cast<std::size_t>(v)];
    auto it = std::lower_bound(row.begin(), row.end(), qubit);
    if (it == row.end() || *it != qubit) row.insert(it, qubit);
  }

  bool at(Vertex v, std::size_t qubit) const {
    const auto& row = rows_[static_cast<std::size_t>(v)];
    return std::binary_search(row.begin(), row.end(), qubit);
  }

  // Sorted qubit indices of v.
  std::span<const std::size_t> qubits_of(Vertex v) const { return rows_[static_cast<std::size_t>(v)]; }

  std::size_t num_vertices() const { return rows_.size(); }
  std::size_t num_qubits() const { return num_qubits_; }

  std::size_t max_row_size() const {
    std::size_t best = 0;
    for (const auto& row : rows_) best = std::max(best, row.size());
    return best;
  }

 private:
  std::size_t num_qubits_ = 0;
  std::vector<std::vector<std::size_t>> rows_;
};

}  // namespace acypart
