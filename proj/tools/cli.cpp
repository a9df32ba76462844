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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <json.hpp>

#include "acypart/dag.hpp"
#include "acypart/exact.hpp"
#include "acypart/formulations.hpp"
#include "acypart/io.hpp"
#include "acypart/model.hpp"
#include "acypart/model_search.hpp"
#include "acypart/multilevel.hpp"
#include "acypart/partition.hpp"
#include "acypart/qcircuit.hpp"

namespace acypart::cli {

namespace {

using nlohmann::json;

// Largest instance `compare` will enumerate through the models.
constexpr std::size_t kCompareMaxVertices = 8;
constexpr PartId kCompareMaxK = 3;

// Usage problem detected after argument parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GraphArgs {
  std::string graph;
  PartId k = 2;
  std::string eps = "0";
};

void add_graph_args(CLI::App* cmd, GraphArgs& a, bool with_k = true) {
  cmd->add_option("--graph", a.graph, "graph file")->required();
  if (with_k) {
    cmd->add_option("--k", a.k, "number of parts")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", a.eps, "imbalance, decimal or fraction");
  }
}

Rational parse_eps(const std::string& text) {
  try {
    return parse_ratio(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--eps: ") + e.what());
  }
}

std::string topo_hash(const Dag& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Vertex v : g.topo_order().order()) {
    const auto u = static_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) {
      h ^= (u >> (8 * b)) & 0xFFu;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json rational_json(const Rational& r) {
  if (r.denominator() == 1) return r.numerator();
  return to_string(r);
}

json partition_json(const Partition& p) { return json(p.assignment); }

void write_partition_if(const std::string& path, const Partition& p) {
  if (!path.empty()) write_text_file(path, write_partition_text(p));
}

struct ModelArgs {
  std::string formulation = "proposed";
  bool relax_z = false;
  std::string objective;
  bool final_without_extended = false;
};

void add_model_args(CLI::App* cmd, ModelArgs& a) {
  cmd->add_option("--formulation", a.formulation,
                  "undirected|nossack|albareda-base|albareda-extended|albareda-final|proposed");
  cmd->add_flag("--relax-z", a.relax_z, "emit z as continuous");
  cmd->add_option("--objective", a.objective, "min-cut|max-internal (default: the formulation's own)");
  cmd->add_flag("--final-without-extended", a.final_without_extended,
                "albareda-final: drop the extended valid inequalities");
}

FormulationModel build_from_args(const Dag& g, const GraphArgs& ga, const ModelArgs& ma) {
  auto kind = parse_formulation(ma.formulation);
  if (!kind || *kind == Formulation::Quantum) throw UsageError("unknown formulation '" + ma.formulation + "'");
  BuildOptions opts;
  opts.k = ga.k;
  opts.eps = parse_eps(ga.eps);
  opts.relax_z = ma.relax_z;
  opts.final_keeps_extended = !ma.final_without_extended;
  if (ma.objective == "min-cut") {
    opts.objective_convention = ObjectiveConvention::MinCut;
  } else if (ma.objective == "max-internal") {
    opts.objective_convention = ObjectiveConvention::MaxInternal;
  } else if (!ma.objective.empty()) {
    throw UsageError("unknown objective '" + ma.objective + "'");
  }
  return build_formulation(*kind, g, opts);
}

json validation_json(const ValidationReport& r) {
  return {{"cut", r.cut},           {"B", r.bound},       {"part_weights", r.part_weights},
          {"balanced", r.balanced}, {"acyclic", r.acyclic}, {"violations", r.violations}};
}

// ---- commands ---------------------------------------------------------------

int cmd_check(const GraphArgs& a, std::ostream& out) {
  const Dag g = read_dag_text(read_text_file(a.graph));
  json j{{"status", "ok"},
         {"n", g.num_vertices()},
         {"m", g.num_edges()},
         {"total_weight", g.total_weight()},
         {"total_cost", g.total_cost()},
         {"topo_order_hash", topo_hash(g)}};
  out << j.dump() << '\n';
  return kOk;
}

struct PartitionArgs {
  GraphArgs graph;
  std::string engine = "bnb";
  std::string warm;
  std::uint64_t budget_nodes = 0;
  std::string output;
};

int cmd_partition(const PartitionArgs& a, std::ostream& out, std::ostream& err) {
  const Dag g = read_dag_text(read_text_file(a.graph.graph));
  const Rational eps = parse_eps(a.graph.eps);
  const PartId k = a.graph.k;
  std::optional<Partition> warm;
  if (!a.warm.empty()) warm = parse_partition_text(read_text_file(a.warm), g.num_vertices(), k);

  SolveResult r;
  if (a.engine == "brute") {
    if (warm) err << "note: --warm is ignored by the brute engine\n";
    r = brute_force(g, k, eps);
  } else if (a.engine == "bnb") {
    SolveBudget budget;
    if (a.budget_nodes > 0) budget.max_nodes = a.budget_nodes;
    r = branch_and_bound(g, k, eps, warm ? &*warm : nullptr, budget);
  } else {
    throw UsageError("unknown engine '" + a.engine + "'");
  }

  json j{{"status", std::string(status_name(r.status))},
         {"B", balance_bound(g, k, eps)},
         {"k", k},
         {"eps", rational_json(eps)},
         {"engine", a.engine},
         {"nodes", r.nodes_explored}};
  if (!r.best) {
    j["cut"] = nullptr;
    out << j.dump() << '\n';
    if (r.status == SolveStatus::Stopped) {
      err << "search budget exhausted before any feasible partition was found\n";
      return kGuard;
    }
    err << "no balanced acyclic partition exists\n";
    return kInfeasible;
  }
  j["cut"] = r.best->cut;
  j["partition"] = partition_json(r.best->partition);
  write_partition_if(a.output, r.best->partition);
  out << j.dump() << '\n';
  return kOk;
}

struct EmitArgs {
  GraphArgs graph;
  ModelArgs model;
  std::string output;
};

int cmd_emit_lp(const EmitArgs& a, std::ostream& out) {
  const Dag g = read_dag_text(read_text_file(a.graph.graph));
  const FormulationModel fm = build_from_args(g, a.graph, a.model);
  const std::string lp = write_lp(fm.model);
  if (a.output.empty()) {
    out << lp;
    return kOk;
  }
  write_text_file(a.output, lp);
  json j{{"status", "ok"},
         {"formulation", std::string(formulation_name(fm.kind))},
         {"variables", fm.model.num_variables()},
         {"constraints", fm.model.num_constraints()},
         {"B", fm.bound},
         {"output", a.output}};
  out << j.dump() << '\n';
  return kOk;
}

struct IngestArgs {
  GraphArgs graph;
  ModelArgs model;
  std::string solution;
  std::string output;
};

int cmd_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
  const Dag g = read_dag_text(read_text_file(a.graph.graph));
  const FormulationModel fm = build_from_args(g, a.graph, a.model);
  const SolutionReadResult read = read_solution(fm.model, read_text_file(a.solution));
  for (const std::string& w : read.warnings) err << "warning: " << w << '\n';
  const Evaluation ev = evaluate(fm.model, read.assignment);

  json j{{"formulation", std::string(formulation_name(fm.kind))},
         {"model_feasible", ev.feasible},
         {"violated_constraints", ev.violated},
         {"objective", rational_json(ev.objective)}};
  bool ok = ev.feasible;
  try {
    const DecodedPartition d = decode_partition(fm, read.assignment);
    const ValidationReport report = validate(g, d.partition, a.graph.k, parse_eps(a.graph.eps));
    j["partition"] = partition_json(d.partition);
    j["model_cut"] = rational_json(d.min_cut);
    j["validation"] = validation_json(report);
    j["cut"] = report.cut;
    ok = ok && report.feasible();
    if (ok) write_partition_if(a.output, d.partition);
  } catch (const FormulationError& e) {
    if (e.kind() != FormulationError::Kind::AmbiguousAssignment) throw;
    j["decode_error"] = e.what();
    ok = false;
  }
  j["status"] = ok ? "feasible" : "violations";
  out << j.dump() << '\n';
  if (!ok) {
    for (const std::string& v : ev.violated) err << "violated: " << v << '\n';
    return kInfeasible;
  }
  return kOk;
}

struct CompareArgs {
  GraphArgs graph;
  std::uint64_t max_nodes = 0;
};

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const Dag g = read_dag_text(read_text_file(a.graph.graph));
  const Rational eps = parse_eps(a.graph.eps);
  const PartId k = a.graph.k;
  if (g.num_vertices() > kCompareMaxVertices || k > kCompareMaxK) {
    err << "compare enumerates model assignments and is limited to n <= " << kCompareMaxVertices
        << " and k <= " << kCompareMaxK << '\n';
    out << json{{"status", "guard"}, {"n", g.num_vertices()}, {"k", k}}.dump() << '\n';
    return kGuard;
  }
  const SolveResult truth = brute_force(g, k, eps);
  json j{{"k", k}, {"eps", rational_json(eps)}, {"B", balance_bound(g, k, eps)}};
  j["brute_force"] = truth.best ? json(truth.best->cut) : json(nullptr);

  bool consistent = true;
  json rows = json::object();
  std::vector<Formulation> kinds{Formulation::UndirectedBaseline};
  for (Formulation f : acyclic_formulations()) kinds.push_back(f);
  for (Formulation f : kinds) {
    BuildOptions opts;
    opts.k = k;
    opts.eps = eps;
    const FormulationModel fm = build_formulation(f, g, opts);
    const EnumerativeSolver solver(fm.model);
    const SearchResult sr = solver.solve({}, a.max_nodes);
    json row{{"variables", fm.model.num_variables()}, {"constraints", fm.model.num_constraints()}, {"nodes", sr.nodes}};
    if (sr.status == SearchStatus::NodeLimit) {
      row["status"] = "stopped";
      consistent = false;
    } else if (!sr.objective) {
      row["status"] = "infeasible";
      row["min_cut"] = nullptr;
      if (f != Formulation::UndirectedBaseline && truth.best) consistent = false;
    } else {
      const Rational cut =
          fm.convention == ObjectiveConvention::MinCut ? *sr.objective : Rational(fm.total_cost) - *sr.objective;
      row["status"] = "optimal";
      row["min_cut"] = rational_json(cut);
      if (f == Formulation::UndirectedBaseline) {
        if (truth.best && cut > Rational(truth.best->cut)) consistent = false;
      } else if (!truth.best || cut != Rational(truth.best->cut)) {
        consistent = false;
      }
    }
    rows[std::string(formulation_name(f))] = row;
  }
  j["formulations"] = rows;
  j["consistent"] = consistent;
  j["status"] = consistent ? "ok" : "mismatch";
  out << j.dump() << '\n';
  if (!consistent) {
    err << "formulation optima disagree with the exact solver\n";
    return kInfeasible;
  }
  return kOk;
}

struct MultilevelArgs {
  GraphArgs graph;
  std::size_t target_n = 8;
  std::uint64_t budget_nodes = kDefaultRefineNodes;
  std::string output;
};

int cmd_multilevel(const MultilevelArgs& a, std::ostream& out) {
  const Dag g = read_dag_text(read_text_file(a.graph.graph));
  const Rational eps = parse_eps(a.graph.eps);
  if (a.target_n < 2) throw UsageError("--target-n must be at least 2");
  MultilevelOptions opts;
  opts.target_n = a.target_n;
  opts.refine_budget.max_nodes = a.budget_nodes;
  const MultilevelResult r = multilevel_partition(g, a.graph.k, eps, opts);
  const ValidationReport report = validate(g, r.refined.partition, a.graph.k, eps);
  json levels = json::array();
  for (const LevelReport& l : r.refined.levels) {
    levels.push_back({{"n", l.num_vertices},
                      {"projected_cut", l.projected_cut},
                      {"refined_cut", l.refined_cut},
                      {"status", std::string(status_name(l.status))}});
  }
  const CoarsenStats& s = r.coarsening.stats;
  json j{{"status", report.feasible() ? "feasible" : "violations"},
         {"cut", r.refined.cut},
         {"B", report.bound},
         {"coarsest_n", r.coarsening.coarsest(g).num_vertices()},
         {"contractions", s.contractions},
         {"checks_skipped", s.checks_skipped},
         {"checks_run", s.checks_run},
         {"rejected_unsafe", s.rejected_unsafe},
         {"rejected_weight", s.rejected_weight},
         {"initial_cut", edge_cut(r.coarsening.coarsest(g), r.initial)},
         {"levels", levels},
         {"partition", partition_json(r.refined.partition)}};
  write_partition_if(a.output, r.refined.partition);
  out << j.dump() << '\n';
  return report.feasible() ? kOk : kInfeasible;
}

struct QuantumArgs {
  std::string circuit;
  std::size_t lm = 2;
  std::string eps = "0";
  std::string strategy = "incremental";
  std::string engine;
  bool unit_boundary = false;
  std::uint64_t budget_nodes = 0;
  std::string output;
};

int cmd_quantum(const QuantumArgs& a, std::ostream& out) {
  const Circuit c = parse_circuit(read_text_file(a.circuit));
  CircuitDagOptions dopts;
  dopts.unit_boundary_weight = a.unit_boundary;
  const CircuitDag cd = circuit_to_dag(c, dopts);
  QuantumOptions opts;
  opts.eps = parse_eps(a.eps);
  opts.max_qubits = a.lm;
  if (a.budget_nodes > 0) opts.budget.max_nodes = a.budget_nodes;
  if (a.strategy == "incremental") {
    opts.strategy = PartCountStrategy::IncrementalK;
  } else if (a.strategy == "bigm") {
    opts.strategy = PartCountStrategy::BigM;
  } else {
    throw UsageError("unknown strategy '" + a.strategy + "'");
  }
  const std::string engine = a.engine.empty() ? (opts.strategy == PartCountStrategy::BigM ? "search" : "bnb") : a.engine;
  if (engine == "brute") {
    opts.engine = QuantumEngine::BruteForce;
  } else if (engine == "bnb") {
    opts.engine = QuantumEngine::BranchAndBound;
  } else if (engine == "search") {
    opts.engine = QuantumEngine::ModelSearch;
  } else {
    throw UsageError("unknown engine '" + engine + "'");
  }
  if (opts.strategy == PartCountStrategy::BigM && opts.engine != QuantumEngine::ModelSearch) {
    throw UsageError("--strategy bigm needs --engine search");
  }
  const QuantumResult r = min_parts_partition(cd.dag, cd.nq, opts);
  const ValidationReport report = validate(cd.dag, r.partition, r.k, opts.eps);
  json j{{"status", report.feasible() ? "feasible" : "violations"},
         {"k", r.k},
         {"cut", r.cut},
         {"cut_proven", r.cut_proven},
         {"qubits", c.qubits.size()},
         {"gates", c.gates.size()},
         {"part_qubits", r.part_qubits},
         {"B", report.bound},
         {"partition", partition_json(r.partition)}};
  write_partition_if(a.output, r.partition);
  out << j.dump() << '\n';
  return report.feasible() ? kOk : kInfeasible;
}

int fail(std::ostream& out, std::ostream& err, int code, const std::string& kind, const std::string& message,
         json extra = json::object()) {
  err << "error: " << message << '\n';
  json j{{"status", "error"}, {"error", kind}, {"message", message}};
  for (auto& [key, value] : extra.items()) j[key] = value;
  out << j.dump() << '\n';
  return code;
}

const char* dag_kind(DagError::Kind k) {
  switch (k) {
    case DagError::Kind::CycleDetected: return "CycleDetected";
    case DagError::Kind::DuplicateEdge: return "DuplicateEdge";
    case DagError::Kind::SelfLoop: return "SelfLoop";
    case DagError::Kind::VertexOutOfRange: return "VertexOutOfRange";
    case DagError::Kind::NegativeValue: return "NegativeValue";
  }
  return "DagError";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced acyclic k-way partitioning of DAGs"};
  app.require_subcommand(1);

  GraphArgs check_args;
  auto* check = app.add_subcommand("check", "validate a graph file");
  add_graph_args(check, check_args, false);

  PartitionArgs part_args;
  auto* part = app.add_subcommand("partition", "solve exactly");
  add_graph_args(part, part_args.graph);
  part->add_option("--engine", part_args.engine, "brute|bnb");
  part->add_option("--warm", part_args.warm, "warm-start partition file");
  part->add_option("--budget-nodes", part_args.budget_nodes, "branch-and-bound node limit");
  part->add_option("--output", part_args.output, "write the partition file");

  EmitArgs emit_args;
  auto* emit = app.add_subcommand("emit-lp", "write a formulation as CPLEX LP");
  add_graph_args(emit, emit_args.graph);
  add_model_args(emit, emit_args.model);
  emit->add_option("--output", emit_args.output, "LP file (default: stdout)");

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest-solution", "check a solver solution against a formulation");
  add_graph_args(ingest, ingest_args.graph);
  add_model_args(ingest, ingest_args.model);
  ingest->add_option("--solution", ingest_args.solution, "solution file")->required();
  ingest->add_option("--output", ingest_args.output, "write the decoded partition file");

  CompareArgs compare_args;
  auto* compare = app.add_subcommand("compare", "optima of every formulation against the exact solver");
  add_graph_args(compare, compare_args.graph);
  compare->add_option("--max-nodes", compare_args.max_nodes, "per-model search node limit (0: none)");

  MultilevelArgs ml_args;
  auto* ml = app.add_subcommand("multilevel", "coarsen, solve, refine");
  add_graph_args(ml, ml_args.graph);
  ml->add_option("--target-n", ml_args.target_n, "coarsest vertex count");
  ml->add_option("--budget-nodes", ml_args.budget_nodes, "refinement node limit per level");
  ml->add_option("--output", ml_args.output, "write the partition file");

  QuantumArgs q_args;
  auto* quantum = app.add_subcommand("quantum", "fewest parts for a circuit under a qubit limit");
  quantum->add_option("--circuit", q_args.circuit, "circuit file")->required();
  quantum->add_option("--lm", q_args.lm, "qubits per part")->required();
  quantum->add_option("--eps", q_args.eps, "imbalance");
  quantum->add_option("--strategy", q_args.strategy, "incremental|bigm");
  quantum->add_option("--engine", q_args.engine, "brute|bnb|search");
  quantum->add_flag("--unit-boundary", q_args.unit_boundary, "entry and exit vertices weigh 1");
  quantum->add_option("--budget-nodes", q_args.budget_nodes, "node limit per solve");
  quantum->add_option("--output", q_args.output, "write the partition file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(check_args, out);
    if (*part) return cmd_partition(part_args, out, err);
    if (*emit) return cmd_emit_lp(emit_args, out);
    if (*ingest) return cmd_ingest(ingest_args, out, err);
    if (*compare) return cmd_compare(compare_args, out, err);
    if (*ml) return cmd_multilevel(ml_args, out);
    if (*quantum) return cmd_quantum(q_args, out);
  } catch (const DagError& e) {
    json extra = json::object();
    if (!e.cycle().empty()) extra["cycle"] = e.cycle();
    return fail(out, err, kInvalidGraph, dag_kind(e.kind()), e.what(), extra);
  } catch (const ParseError& e) {
    return fail(out, err, kUsage, "ParseError", e.what(), {{"line", e.line()}});
  } catch (const UsageError& e) {
    return fail(out, err, kUsage, "Usage", e.what());
  } catch (const ModelError& e) {
    return fail(out, err, kUsage, e.kind() == ModelError::Kind::NonIntegralValue ? "NonIntegralValue" : "ModelError",
                e.what());
  } catch (const SolverError& e) {
    if (e.kind() == SolverError::Kind::TooLarge) return fail(out, err, kGuard, "TooLarge", e.what());
    return fail(out, err, kUsage, "InvalidWarmStart", e.what());
  } catch (const FormulationError& e) {
    if (e.kind() == FormulationError::Kind::QubitCapacityInfeasible) {
      return fail(out, err, kInfeasible, "QubitCapacityInfeasible", e.what());
    }
    return fail(out, err, kUsage, "FormulationError", e.what());
  } catch (const CircuitError& e) {
    if (e.kind() == CircuitError::Kind::NoFeasibleK) return fail(out, err, kInfeasible, "NoFeasibleK", e.what());
    return fail(out, err, kUsage, "CircuitError", e.what());
  } catch (const MultilevelError& e) {
    if (e.kind() == MultilevelError::Kind::Infeasible) return fail(out, err, kInfeasible, "Infeasible", e.what());
    return fail(out, err, kUsage, "MultilevelError", e.what());
  } catch (const Error& e) {
    return fail(out, err, kUsage, "Error", e.what());
  }
  return kUsage;
}

}  // namespace acypart::cli
