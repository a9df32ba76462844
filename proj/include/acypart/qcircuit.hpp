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

// Quantum circuits as DAGs and the minimum-part-count partitioning driver.
//
// Circuit text: one gate per line, `name q_a q_b ...`; `;` also separates
// gates and `#` starts a comment. Qubits are declared by first use.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/exact.hpp"
#include "acypart/formulations.hpp"
#include "acypart/partition.hpp"
#include "acypart/qubit_matrix.hpp"

namespace acypart {

struct Gate {
  std::string name;
  std::vector<std::size_t> qubits;
};

struct Circuit {
  std::vector<std::string> qubits;
  std::vector<Gate> gates;
};

class CircuitError : public Error {
 public:
  enum class Kind { UnknownQubit, EmptyCircuit, DuplicateOperand, NoFeasibleK };

  CircuitError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Throws ParseError for a gate without operands and
/// CircuitError(DuplicateOperand) for a repeated operand.
Circuit parse_circuit(std::string_view text);

struct CircuitDag {
  Dag dag;
  QubitMatrix nq;
  std::vector<Vertex> entry;  // per qubit
  std::vector<Vertex> exit;   // per qubit
  std::vector<Vertex> gate;   // per gate
};

struct CircuitDagOptions {
  // Entry and exit vertices weigh 0 unless set.
  bool unit_boundary_weight = false;
};

/// Vertices: one entry per qubit, then the gates in order, then one exit per
/// qubit. Each qubit contributes the chain entry -> gates using it -> exit.
/// Consecutive gates sharing several qubits get a single edge whose cost is
/// the number of shared qubits.
CircuitDag circuit_to_dag(const Circuit& c, const CircuitDagOptions& options = {});

std::size_t unique_qubits(const QubitMatrix& nq, std::span<const Vertex> vertices);

enum class QuantumEngine { BruteForce, BranchAndBound, ModelSearch, EmitLP };

// LP text in, solution text out; nullopt when the model is infeasible.
using QuantumLpSolver = std::function<std::optional<std::string>(const std::string& lp_text)>;

struct QuantumOptions {
  Rational eps{0};
  std::size_t max_qubits = 2;
  QuantumEngine engine = QuantumEngine::BranchAndBound;
  PartCountStrategy strategy = PartCountStrategy::IncrementalK;
  QuantumLpSolver solver;
  SolveBudget budget;
  // Part limit of the big-M model; 0 means the vertex count.
  PartId max_k = 0;
};

struct QuantumResult {
  PartId k = 0;
  Partition partition;
  Weight cut = 0;
  std::vector<std::size_t> part_qubits;
  // False when a budget stopped the search at the returned k.
  bool cut_proven = true;
};

/// IncrementalK: the first k = 1, 2, ... with a feasible balanced acyclic
/// partition within qubit capacity, and its minimum cut. BigM (model search
/// or EmitLP engines only): one model over max_k parts. Throws
/// FormulationError(QubitCapacityInfeasible) when a vertex alone exceeds
/// the capacity and CircuitError(NoFeasibleK) when no k works.
QuantumResult min_parts_partition(const Dag& g, const QubitMatrix& nq, const QuantumOptions& options);

}  // namespace acypart
