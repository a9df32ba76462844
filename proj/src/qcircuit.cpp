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

#include "acypart/qcircuit.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "acypart/model.hpp"
#include "acypart/model_search.hpp"

namespace acypart {

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t line_no = 1;
  std::vector<std::string> tokens;
  std::string current;
  bool in_comment = false;

  auto flush_token = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  auto flush_gate = [&] {
    flush_token();
    if (tokens.empty()) return;
    if (tokens.size() < 2) throw ParseError(line_no, "gate '" + tokens[0] + "' has no operands");
    Gate gate{tokens[0], {}};
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      auto [it, fresh] = index.emplace(tokens[i], c.qubits.size());
      if (fresh) c.qubits.push_back(tokens[i]);
      if (std::find(gate.qubits.begin(), gate.qubits.end(), it->second) != gate.qubits.end()) {
        throw CircuitError(CircuitError::Kind::DuplicateOperand,
                           "line " + std::to_string(line_no) + ": qubit " + tokens[i] + " repeated in gate " + tokens[0]);
      }
      gate.qubits.push_back(it->second);
    }
    c.gates.push_back(std::move(gate));
    tokens.clear();
  };

  for (char ch : text) {
    if (ch == '\n') {
      flush_gate();
      in_comment = false;
      ++line_no;
    } else if (in_comment) {
      continue;
    } else if (ch == '#') {
      in_comment = true;
    } else if (ch == ';') {
      flush_gate();
    } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
      flush_token();
    } else {
      current.push_back(ch);
    }
  }
  flush_gate();
  return c;
}

CircuitDag circuit_to_dag(const Circuit& c, const CircuitDagOptions& options) {
  if (c.gates.empty()) throw CircuitError(CircuitError::Kind::EmptyCircuit, "circuit has no gates");
  const std::size_t nq = c.qubits.size();
  const std::size_t ng = c.gates.size();
  CircuitDag out;
  RawGraph raw;
  const Weight boundary = options.unit_boundary_weight ? 1 : 0;
  raw.weights.assign(nq, boundary);
  raw.weights.insert(raw.weights.end(), ng, 1);
  raw.weights.insert(raw.weights.end(), nq, boundary);
  out.nq = QubitMatrix(raw.weights.size(), nq);
  for (std::size_t q = 0; q < nq; ++q) {
    out.entry.push_back(static_cast<Vertex>(q));
    out.exit.push_back(static_cast<Vertex>(nq + ng + q));
    out.nq.set(out.entry.back(), q);
    out.nq.set(out.exit.back(), q);
  }

  std::map<std::pair<Vertex, Vertex>, Weight> edges;
  std::vector<Vertex> last(out.entry);
  for (std::size_t gi = 0; gi < ng; ++gi) {
    const auto v = static_cast<Vertex>(nq + gi);
    out.gate.push_back(v);
    for (std::size_t q : c.gates[gi].qubits) {
      if (q >= nq) {
        throw CircuitError(CircuitError::Kind::UnknownQubit,
                           "gate " + std::to_string(gi) + " uses undeclared qubit " + std::to_string(q));
      }
      out.nq.set(v, q);
      edges[{last[q], v}] += 1;
      last[q] = v;
    }
  }
  for (std::size_t q = 0; q < nq; ++q) edges[{last[q], out.exit[q]}] += 1;
  for (const auto& [uv, cost] : edges) raw.edges.push_back({uv.first, uv.second, cost});
  out.dag = Dag(std::move(raw));
  return out;
}

std::size_t unique_qubits(const QubitMatrix& nq, std::span<const Vertex> vertices) {
  std::vector<char> seen(nq.num_qubits(), 0);
  std::size_t count = 0;
  for (Vertex v : vertices) {
    for (std::size_t q : nq.qubits_of(v)) {
      if (!seen[q]) {
        seen[q] = 1;
        ++count;
      }
    }
  }
  return count;
}

namespace {

// Relabels used parts 0..k'-1 keeping their relative order.
Partition compress(const Partition& p) {
  std::vector<PartId> relabel(static_cast<std::size_t>(p.k), -1);
  for (PartId s : p.assignment) relabel[static_cast<std::size_t>(s)] = 0;
  PartId next = 0;
  for (PartId& r : relabel) {
    if (r == 0) r = next++;
  }
  std::vector<PartId> parts;
  for (PartId s : p.assignment) parts.push_back(relabel[static_cast<std::size_t>(s)]);
  return Partition(std::move(parts), std::max<PartId>(next, 1));
}

std::optional<Partition> solve_model(const FormulationModel& fm, const QuantumOptions& options, bool& proven) {
  if (options.engine == QuantumEngine::ModelSearch) {
    const EnumerativeSolver solver(fm.model);
    const SearchResult r = solver.solve({}, options.budget.max_nodes.value_or(0));
    proven = r.status != SearchStatus::NodeLimit;
    if (!r.objective) return std::nullopt;
    return decode_partition(fm, r.assignment(fm.model)).partition;
  }
  if (!options.solver) throw Error("the emit-lp engine needs an external solver");
  const auto text = options.solver(write_lp(fm.model));
  if (!text) return std::nullopt;
  const SolutionReadResult read = read_solution(fm.model, *text);
  const Evaluation ev = evaluate(fm.model, read.assignment);
  if (!ev.feasible) {
    throw Error("external solution violates " + (ev.violated.empty() ? std::string("the model") : ev.violated.front()));
  }
  return decode_partition(fm, read.assignment).partition;
}

QuantumResult finish(const Dag& g, const QubitMatrix& nq, Partition p, bool proven) {
  QuantumResult r;
  r.partition = std::move(p);
  r.k = r.partition.k;
  r.cut = edge_cut(g, r.partition);
  r.cut_proven = proven;
  std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(r.k));
  for (std::size_t v = 0; v < r.partition.size(); ++v) {
    members[static_cast<std::size_t>(r.partition[v])].push_back(static_cast<Vertex>(v));
  }
  for (const auto& m : members) r.part_qubits.push_back(unique_qubits(nq, m));
  return r;
}

}  // namespace

QuantumResult min_parts_partition(const Dag& g, const QubitMatrix& nq, const QuantumOptions& options) {
  if (nq.num_vertices() != g.num_vertices()) throw Error("qubit matrix does not match the graph");
  if (nq.max_row_size() > options.max_qubits) {
    throw FormulationError(FormulationError::Kind::QubitCapacityInfeasible,
                           "a gate acts on " + std::to_string(nq.max_row_size()) + " qubits, more than the limit " +
                               std::to_string(options.max_qubits));
  }
  const auto n = static_cast<PartId>(g.num_vertices());
  const QubitConstraint qc{&nq, options.max_qubits};

  if (options.strategy == PartCountStrategy::BigM) {
    if (options.engine != QuantumEngine::ModelSearch && options.engine != QuantumEngine::EmitLP) {
      throw Error("the big-M strategy needs the model-search or emit-lp engine");
    }
    BuildOptions bo;
    bo.k = options.max_k > 0 ? options.max_k : std::max<PartId>(n, 1);
    bo.eps = options.eps;
    const FormulationModel fm = build_quantum(g, bo, nq, options.max_qubits, PartCountStrategy::BigM);
    bool proven = true;
    auto p = solve_model(fm, options, proven);
    if (!p) throw CircuitError(CircuitError::Kind::NoFeasibleK, "no feasible part count up to " + std::to_string(bo.k));
    return finish(g, nq, compress(*p), proven);
  }

  for (PartId k = 1; k <= std::max<PartId>(n, 1); ++k) {
    std::optional<Partition> found;
    bool proven = true;
    switch (options.engine) {
      case QuantumEngine::BruteForce: {
        const SolveResult r = brute_force(g, k, options.eps, qc);
        if (r.best) found = r.best->partition;
        break;
      }
      case QuantumEngine::BranchAndBound: {
        const SolveResult r = branch_and_bound(g, k, options.eps, nullptr, options.budget, qc);
        if (r.best) found = r.best->partition;
        proven = r.status != SolveStatus::Stopped;
        break;
      }
      case QuantumEngine::ModelSearch:
      case QuantumEngine::EmitLP: {
        BuildOptions bo;
        bo.k = k;
        bo.eps = options.eps;
        found = solve_model(build_quantum(g, bo, nq, options.max_qubits, PartCountStrategy::IncrementalK), options,
                            proven);
        break;
      }
    }
    if (found) return finish(g, nq, *found, proven);
  }
  throw CircuitError(CircuitError::Kind::NoFeasibleK,
                     "no part count up to the vertex count satisfies balance and qubit capacity");
}

}  // namespace acypart
