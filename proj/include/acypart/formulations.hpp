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

// ILP formulations of balanced (acyclic) k-way DAG partitioning, built as
// LinearModels, plus the maps between partitions and model assignments.
//
// Variable names are part of the contract (decoding and external solution
// files rely on them):
//
//   x_<i>_<s>   vertex i is in part s
//   z_<i>_<j>   pair indicator; i precedes j topologically. Cut marker in the
//               undirected, proposed and quantum models, same-part marker in
//               the Nossack and Albareda models
//   y_<s>_<t>   quotient edge s -> t may exist
//   pi_<s>      topological label of part s (Nossack)
//   pq_<s>_<q>  part s uses qubit q
//   u_<s>       part s is non-empty (big-M part counting)

#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "acypart/dag.hpp"
#include "acypart/model.hpp"
#include "acypart/partition.hpp"
#include "acypart/preprocess.hpp"
#include "acypart/qubit_matrix.hpp"

namespace acypart {

enum class Formulation { UndirectedBaseline, Nossack, AlbaredaBase, AlbaredaExtended, AlbaredaFinal, Proposed, Quantum };
enum class AlbaredaVariant { Base, Extended, Final };
enum class ObjectiveConvention { MinCut, MaxInternal };
enum class PartCountStrategy { IncrementalK, BigM };

std::string_view formulation_name(Formulation kind);
std::optional<Formulation> parse_formulation(std::string_view name);
// The acyclic formulations that take only the graph (all but undirected and quantum).
std::vector<Formulation> acyclic_formulations();

struct BuildOptions {
  PartId k = 2;
  Rational eps{0};
  // Emit z as continuous in [0, 1].
  bool relax_z = false;
  // Unset: the formulation's own convention.
  std::optional<ObjectiveConvention> objective_convention;
  // Albareda final variant: keep the extended valid inequalities.
  bool final_keeps_extended = true;
};

class FormulationError : public Error {
 public:
  enum class Kind { InvalidK, MissingTables, QubitCapacityInfeasible, AmbiguousAssignment, IncompatibleNumbering };

  FormulationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct FormulationModel {
  LinearModel model;
  Formulation kind = Formulation::Proposed;
  ObjectiveConvention convention = ObjectiveConvention::MinCut;
  // z = 1 marks a cut edge (true) or a same-part pair (false).
  bool z_marks_cut = true;
  PartId k = 1;
  std::size_t num_vertices = 0;
  Weight bound = 0;
  Weight total_cost = 0;
  // Every z variable as (earlier, later) in topological order.
  std::vector<std::pair<Vertex, Vertex>> z_pairs;
  // z variable of each graph edge, aligned with Dag::edges().
  std::vector<VarIndex> edge_z;
  std::vector<Weight> edge_cost;
  bool has_y = false;
  bool has_pi = false;
  // Quantum only.
  std::size_t num_qubits = 0;
  std::size_t max_qubits = 0;
  PartCountStrategy strategy = PartCountStrategy::IncrementalK;
  Weight big_m = 0;
};

FormulationModel build_undirected(const Dag& g, const BuildOptions& opts);
FormulationModel build_nossack(const Dag& g, const BuildOptions& opts);
/// Extended and Final need tables.has_triples(); otherwise
/// FormulationError(MissingTables).
FormulationModel build_albareda(const Dag& g, const BuildOptions& opts, const PreprocessTables& tables,
                                AlbaredaVariant variant);
FormulationModel build_proposed(const Dag& g, const BuildOptions& opts);
/// Proposed model plus qubit capacity. BigM adds u_s and the objective
/// M * sum(u) + cut with M = 1 + total edge cost. Throws
/// FormulationError(QubitCapacityInfeasible) when one vertex alone uses more
/// than max_qubits qubits.
FormulationModel build_quantum(const Dag& g, const BuildOptions& opts, const QubitMatrix& nq, std::size_t max_qubits,
                               PartCountStrategy strategy);

/// Any formulation except Quantum; computes preprocessing tables as needed.
FormulationModel build_formulation(Formulation kind, const Dag& g, const BuildOptions& opts);

struct DecodedPartition {
  Partition partition;
  // Model objective at the assignment (model's own sense).
  Rational objective{0};
  // Cut implied by the z variables, converted to the min-cut convention.
  Rational min_cut{0};
  std::size_t parts_used = 0;
};

/// Reads the x variables; throws FormulationError(AmbiguousAssignment) when
/// a vertex is in no part or in several.
DecodedPartition decode_partition(const FormulationModel& fm, const Assignment& assignment);

/// Builds the assignment that represents partition p in the model: z from
/// part membership, y from quotient adjacency, pi from the quotient's
/// topological order, pq from part qubit sets, u from part occupancy.
/// Throws FormulationError(IncompatibleNumbering) when the part ids cannot
/// be represented: the proposed, quantum and Albareda models need a
/// topological numbering; Nossack needs an acyclic quotient and part sizes
/// non-increasing in part id.
Assignment encode_partition(const FormulationModel& fm, const Dag& g, const Partition& p,
                            const QubitMatrix* nq = nullptr);

}  // namespace acypart
