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

#include "acypart/formulations.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace acypart {

namespace {

std::string id(std::int64_t v) { return std::to_string(v); }

std::string join(std::string_view prefix, std::initializer_list<std::int64_t> parts) {
  std::string out(prefix);
  for (std::int64_t p : parts) {
    out += '_';
    out += id(p);
  }
  return out;
}

class Builder {
 public:
  Builder(const Dag& g, const BuildOptions& opts, Formulation kind, std::string model_name)
      : g_(g), opts_(opts), n_(g.num_vertices()) {
    if (opts.k < 1) throw FormulationError(FormulationError::Kind::InvalidK, "k must be at least 1");
    fm_.model = LinearModel(std::move(model_name));
    fm_.kind = kind;
    fm_.k = opts.k;
    fm_.num_vertices = n_;
    fm_.bound = balance_bound(g, opts.k, opts.eps);
    fm_.total_cost = g.total_cost();
    fm_.edge_z.assign(g.num_edges(), 0);
    for (const Edge& e : g.edges()) fm_.edge_cost.push_back(e.cost);
  }

  PartId k() const { return opts_.k; }
  Weight bound() const { return fm_.bound; }
  std::size_t pos(Vertex v) const { return g_.topo_order().position(v); }

  void add_x() {
    x_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
      for (PartId s = 0; s < k(); ++s) {
        x_[i].push_back(fm_.model.add_variable(join("x", {static_cast<std::int64_t>(i), s}), Domain::binary()));
      }
    }
  }
  VarIndex x(Vertex i, PartId s) const { return x_[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)]; }

  VarIndex add_z(Vertex a, Vertex b) {
    const Domain d = opts_.relax_z ? Domain::continuous(0.0, 1.0) : Domain::binary();
    const VarIndex v = fm_.model.add_variable(join("z", {a, b}), d);
    z_.emplace(std::make_pair(a, b), v);
    fm_.z_pairs.emplace_back(a, b);
    return v;
  }
  // z of an unordered comparable pair.
  VarIndex z(Vertex a, Vertex b) const {
    if (pos(a) > pos(b)) std::swap(a, b);
    return z_.at({a, b});
  }

  void add_edge_z() {
    for (std::size_t e = 0; e < g_.num_edges(); ++e) fm_.edge_z[e] = add_z(g_.edge(e).from, g_.edge(e).to);
  }

  // z for every reachable pair; edges first, then by topological position.
  void add_reachable_z(const PreprocessTables& t) {
    add_edge_z();
    const auto order = g_.topo_order().order();
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        const Vertex i = order[a];
        const Vertex j = order[b];
        if (t.alpha(i, j) && !z_.count({i, j})) add_z(i, j);
      }
    }
  }

  void add_y() {
    y_.assign(static_cast<std::size_t>(k()), std::vector<VarIndex>(static_cast<std::size_t>(k()), 0));
    for (PartId s = 0; s < k(); ++s) {
      for (PartId t = 0; t < k(); ++t) {
        if (s != t) y_[s][t] = fm_.model.add_variable(join("y", {s, t}), Domain::binary());
      }
    }
    fm_.has_y = true;
  }
  VarIndex y(PartId s, PartId t) const { return y_[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]; }

  void add(std::string name, std::vector<Term> terms, Sense sense, double rhs) {
    fm_.model.add_constraint(std::move(name), std::move(terms), sense, rhs);
  }

  void add_assignment_and_balance() {
    for (std::size_t i = 0; i < n_; ++i) {
      std::vector<Term> terms;
      for (PartId s = 0; s < k(); ++s) terms.push_back({x(static_cast<Vertex>(i), s), 1.0});
      add(join("one_part", {static_cast<std::int64_t>(i)}), std::move(terms), Sense::Equal, 1.0);
    }
    for (PartId s = 0; s < k(); ++s) {
      std::vector<Term> terms;
      for (std::size_t i = 0; i < n_; ++i) {
        terms.push_back({x(static_cast<Vertex>(i), s), static_cast<double>(g_.weight(static_cast<Vertex>(i)))});
      }
      add(join("balance", {s}), std::move(terms), Sense::LessEqual, static_cast<double>(bound()));
    }
  }

  // x_is + x_jt - 1 <= y_st for every edge and ordered part pair s != t.
  void add_induced_edges() {
    for (const Edge& e : g_.edges()) {
      for (PartId s = 0; s < k(); ++s) {
        for (PartId t = 0; t < k(); ++t) {
          if (s == t) continue;
          add(join("induced", {e.from, e.to, s, t}), {{x(e.from, s), 1.0}, {x(e.to, t), 1.0}, {y(s, t), -1.0}},
              Sense::LessEqual, 1.0);
        }
      }
    }
  }

  // Same-part marker: z_ab = 1 forces a and b into one part.
  void add_same_part_link(Vertex a, Vertex b, std::string_view prefix) {
    for (PartId s = 0; s < k(); ++s) {
      add(join(prefix, {a, b, s}), {{z(a, b), 1.0}, {x(a, s), 1.0}, {x(b, s), -1.0}}, Sense::LessEqual, 1.0);
    }
  }

  void set_objective(ObjectiveConvention native) {
    const ObjectiveConvention conv = opts_.objective_convention.value_or(native);
    fm_.convention = conv;
    std::vector<Term> terms;
    for (std::size_t e = 0; e < g_.num_edges(); ++e) {
      terms.push_back({fm_.edge_z[e], static_cast<double>(g_.edge(e).cost)});
    }
    // Cut markers are native to MinCut; same-part markers to MaxInternal.
    const bool flip = (fm_.z_marks_cut ? ObjectiveConvention::MinCut : ObjectiveConvention::MaxInternal) != conv;
    double constant = 0.0;
    if (flip) {
      for (Term& t : terms) t.coef = -t.coef;
      constant = static_cast<double>(g_.total_cost());
    }
    fm_.model.set_objective(conv == ObjectiveConvention::MinCut ? ObjectiveSense::Minimize : ObjectiveSense::Maximize,
                            std::move(terms), constant);
  }

  FormulationModel& fm() { return fm_; }
  FormulationModel take() { return std::move(fm_); }

 private:
  const Dag& g_;
  const BuildOptions& opts_;
  std::size_t n_;
  FormulationModel fm_;
  std::vector<std::vector<VarIndex>> x_;
  std::map<std::pair<Vertex, Vertex>, VarIndex> z_;
  std::vector<std::vector<VarIndex>> y_;
};

// Proposed core: cut markers and a y matrix pinned to its upper triangle.
void add_proposed_core(Builder& b, const Dag& g) {
  b.add_x();
  b.add_edge_z();
  b.add_y();
  b.add_assignment_and_balance();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    for (PartId s = 0; s < b.k(); ++s) {
      b.add(join("cut", {ed.from, ed.to, s}),
            {{b.x(ed.to, s), 1.0}, {b.x(ed.from, s), -1.0}, {b.fm().edge_z[e], -1.0}}, Sense::LessEqual, 0.0);
    }
  }
  b.add_induced_edges();
  for (PartId s = 0; s < b.k(); ++s) {
    for (PartId t = 0; t < s; ++t) b.add(join("lower", {s, t}), {{b.y(s, t), 1.0}}, Sense::Equal, 0.0);
  }
}

}  // namespace

std::string_view formulation_name(Formulation kind) {
  switch (kind) {
    case Formulation::UndirectedBaseline: return "undirected";
    case Formulation::Nossack: return "nossack";
    case Formulation::AlbaredaBase: return "albareda-base";
    case Formulation::AlbaredaExtended: return "albareda-extended";
    case Formulation::AlbaredaFinal: return "albareda-final";
    case Formulation::Proposed: return "proposed";
    case Formulation::Quantum: return "quantum";
  }
  return "unknown";
}

std::optional<Formulation> parse_formulation(std::string_view name) {
  for (Formulation f : {Formulation::UndirectedBaseline, Formulation::Nossack, Formulation::AlbaredaBase,
                        Formulation::AlbaredaExtended, Formulation::AlbaredaFinal, Formulation::Proposed,
                        Formulation::Quantum}) {
    if (formulation_name(f) == name) return f;
  }
  return std::nullopt;
}

std::vector<Formulation> acyclic_formulations() {
  return {Formulation::Nossack, Formulation::AlbaredaBase, Formulation::AlbaredaExtended, Formulation::AlbaredaFinal,
          Formulation::Proposed};
}

FormulationModel build_undirected(const Dag& g, const BuildOptions& opts) {
  Builder b(g, opts, Formulation::UndirectedBaseline, "undirected");
  b.add_x();
  b.add_edge_z();
  b.add_assignment_and_balance();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const VarIndex z = b.fm().edge_z[e];
    for (PartId s = 0; s < b.k(); ++s) {
      b.add(join("cut_lo", {ed.from, ed.to, s}), {{z, 1.0}, {b.x(ed.from, s), -1.0}, {b.x(ed.to, s), 1.0}},
            Sense::GreaterEqual, 0.0);
      b.add(join("cut_hi", {ed.from, ed.to, s}), {{z, 1.0}, {b.x(ed.from, s), 1.0}, {b.x(ed.to, s), -1.0}},
            Sense::GreaterEqual, 0.0);
    }
  }
  b.set_objective(ObjectiveConvention::MinCut);
  return b.take();
}

FormulationModel build_nossack(const Dag& g, const BuildOptions& opts) {
  Builder b(g, opts, Formulation::Nossack, "nossack");
  b.fm().z_marks_cut = false;
  const PreprocessTables tables(g);
  const std::size_t n = g.num_vertices();
  const PartId k = b.k();

  b.add_x();
  b.add_reachable_z(tables);
  b.add_y();
  std::vector<VarIndex> pi;
  for (PartId s = 0; s < k; ++s) {
    pi.push_back(b.fm().model.add_variable(join("pi", {s}), Domain::integer(0.0, static_cast<double>(k - 1))));
  }
  b.fm().has_pi = true;

  b.add_assignment_and_balance();
  for (const auto& [a, c] : std::vector(b.fm().z_pairs)) b.add_same_part_link(a, c, "same");

  const auto order = g.topo_order().order();
  for (std::size_t pa = 0; pa < n; ++pa) {
    const Vertex i = order[pa];
    for (std::size_t pb = pa + 1; pb < n; ++pb) {
      const Vertex j = order[pb];
      if (!tables.alpha(i, j)) continue;
      for (std::size_t pc = pb + 1; pc < n; ++pc) {
        const Vertex h = order[pc];
        if (!tables.alpha(j, h)) continue;
        const VarIndex zij = b.z(i, j);
        const VarIndex zjh = b.z(j, h);
        const VarIndex zih = b.z(i, h);
        // Transitivity of the same-part relation along i ~> j ~> h.
        b.add(join("tri1", {i, j, h}), {{zij, 1.0}, {zjh, 1.0}, {zih, -1.0}}, Sense::LessEqual, 1.0);
        b.add(join("tri2", {i, j, h}), {{zij, 1.0}, {zih, 1.0}, {zjh, -1.0}}, Sense::LessEqual, 1.0);
        b.add(join("tri3", {i, j, h}), {{zjh, 1.0}, {zih, 1.0}, {zij, -1.0}}, Sense::LessEqual, 1.0);
        // Convexity: i and h together pull j in.
        b.add(join("tri4", {i, j, h}), {{zih, 1.0}, {zij, -1.0}}, Sense::LessEqual, 0.0);
        b.add(join("tri5", {i, j, h}), {{zih, 1.0}, {zjh, -1.0}}, Sense::LessEqual, 0.0);
      }
    }
  }

  b.add_induced_edges();
  const auto nd = static_cast<double>(n);
  for (PartId s = 0; s < k; ++s) {
    for (PartId t = 0; t < k; ++t) {
      if (s == t) continue;
      b.add(join("mtz", {s, t}), {{b.y(s, t), nd}, {pi[t], -1.0}, {pi[s], 1.0}}, Sense::LessEqual, nd - 1.0);
    }
  }
  for (PartId s = 1; s < k; ++s) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n; ++i) {
      terms.push_back({b.x(static_cast<Vertex>(i), s), 1.0});
      terms.push_back({b.x(static_cast<Vertex>(i), s - 1), -1.0});
    }
    b.add(join("sym", {s}), std::move(terms), Sense::LessEqual, 0.0);
  }
  b.set_objective(ObjectiveConvention::MaxInternal);
  return b.take();
}

FormulationModel build_albareda(const Dag& g, const BuildOptions& opts, const PreprocessTables& tables,
                                AlbaredaVariant variant) {
  const Formulation kind = variant == AlbaredaVariant::Base       ? Formulation::AlbaredaBase
                           : variant == AlbaredaVariant::Extended ? Formulation::AlbaredaExtended
                                                                  : Formulation::AlbaredaFinal;
  if (tables.num_vertices() != g.num_vertices()) {
    throw FormulationError(FormulationError::Kind::MissingTables, "preprocessing tables do not match the graph");
  }
  if (variant != AlbaredaVariant::Base && !tables.has_triples()) {
    throw FormulationError(FormulationError::Kind::MissingTables,
                           std::string(formulation_name(kind)) + " needs the triple weight table");
  }
  Builder b(g, opts, kind, std::string(formulation_name(kind)));
  b.fm().z_marks_cut = false;
  const std::size_t n = g.num_vertices();
  const PartId k = b.k();
  const Weight B = b.bound();
  const auto order = g.topo_order().order();

  // Pairs are addressed in topological order: a before c.
  auto light = [&](Vertex a, Vertex c) {
    auto w = tables.pair_weight(a, c);
    return w && *w <= B;
  };
  auto heavy = [&](Vertex a, Vertex c) {
    auto w = tables.pair_weight(a, c);
    return w && *w > B;
  };
  auto is_edge = [&](Vertex a, Vertex c) { return g.find_edge(a, c).has_value(); };

  b.add_x();
  if (variant == AlbaredaVariant::Base) {
    b.add_edge_z();
  } else {
    b.add_reachable_z(tables);
  }
  b.add_assignment_and_balance();

  // sum_{t >= s} x_at + sum_{t in lower(s)} x_ct <= rhs.
  auto split_row = [&](Vertex a, Vertex c, PartId s, bool upper_inclusive) {
    std::vector<Term> terms;
    for (PartId t = s; t < k; ++t) terms.push_back({b.x(a, t), 1.0});
    const PartId stop = upper_inclusive ? s + 1 : s;
    for (PartId t = 0; t < stop; ++t) terms.push_back({b.x(c, t), 1.0});
    return terms;
  };

  if (variant != AlbaredaVariant::Final) {
    for (std::size_t pa = 0; pa < n; ++pa) {
      for (std::size_t pc = pa + 1; pc < n; ++pc) {
        const Vertex a = order[pa];
        const Vertex c = order[pc];
        if (!tables.alpha(a, c)) continue;
        const bool is_light = light(a, c);
        for (PartId s = 0; s < k; ++s) {
          b.add(join(is_light ? "topo1" : "topo2", {a, c, s}), split_row(a, c, s, !is_light), Sense::LessEqual, 1.0);
        }
      }
    }
    // z_ac = 1 forbids part(a) < part(c); with topo1/topo2 this means same part.
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      for (PartId s = 0; s < k; ++s) {
        std::vector<Term> terms{{b.fm().edge_z[e], 1.0}};
        for (PartId t = 0; t < s; ++t) terms.push_back({b.x(ed.from, t), 1.0});
        for (PartId t = s; t < k; ++t) terms.push_back({b.x(ed.to, t), 1.0});
        b.add(join("topo3", {ed.from, ed.to, s}), std::move(terms), Sense::LessEqual, 2.0);
      }
    }
  }

  if (variant == AlbaredaVariant::Base) {
    b.set_objective(ObjectiveConvention::MaxInternal);
    return b.take();
  }

  // Non-edge pairs have no topo3 row; tie their marker to the x variables.
  for (const auto& [a, c] : std::vector(b.fm().z_pairs)) {
    if (variant == AlbaredaVariant::Final || !is_edge(a, c)) b.add_same_part_link(a, c, "link");
  }

  // A heavy pair never fits in one convex part.
  for (const auto& [a, c] : std::vector(b.fm().z_pairs)) {
    if (heavy(a, c)) b.add(join("fix", {a, c}), {{b.z(a, c), 1.0}}, Sense::Equal, 0.0);
  }

  const bool extended_rows = variant == AlbaredaVariant::Extended || opts.final_keeps_extended;
  if (extended_rows) {
    for (const Edge& e : g.edges()) {
      if (!heavy(e.from, e.to)) continue;
      const Vertex i = e.from;
      const Vertex j = e.to;
      for (std::size_t l = 0; l < n; ++l) {
        const auto lv = static_cast<Vertex>(l);
        if (lv == i || lv == j || !tables.comparable(i, lv) || !tables.comparable(j, lv)) continue;
        const VarIndex zij = b.z(i, j);
        const VarIndex zil = b.z(i, lv);
        const VarIndex zjl = b.z(j, lv);
        b.add(join("heavy_tri1", {i, j, lv}), {{zij, 1.0}, {zjl, 1.0}, {zil, -1.0}}, Sense::LessEqual, 1.0);
        b.add(join("heavy_tri2", {i, j, lv}), {{zil, 1.0}, {zjl, 1.0}, {zij, -1.0}}, Sense::LessEqual, 1.0);
        b.add(join("heavy_tri3", {i, j, lv}), {{zij, 1.0}, {zil, 1.0}, {zjl, -1.0}}, Sense::LessEqual, 1.0);
      }
    }
    for (std::size_t pa = 0; pa < n; ++pa) {
      const Vertex i = order[pa];
      for (std::size_t pb = pa + 1; pb < n; ++pb) {
        const Vertex j = order[pb];
        if (!tables.alpha(i, j)) continue;
        for (std::size_t pc = pb + 1; pc < n; ++pc) {
          const Vertex l = order[pc];
          if (!tables.alpha(j, l)) continue;
          const VarIndex zij = b.z(i, j);
          const VarIndex zjl = b.z(j, l);
          const VarIndex zil = b.z(i, l);
          if (light(i, j) && light(i, l)) b.add(join("order1", {i, j, l}), {{zil, 1.0}, {zij, -1.0}}, Sense::LessEqual, 0.0);
          if (light(i, j) && light(j, l)) b.add(join("order2", {i, j, l}), {{zil, 1.0}, {zjl, -1.0}}, Sense::LessEqual, 0.0);
          const Weight a3 = *tables.triple_weight(i, j, l);
          if (light(i, j) && light(j, l) && light(i, l) && a3 > B) {
            b.add(join("triple", {i, j, l}), {{zij, 1.0}, {zjl, 1.0}, {zil, 1.0}}, Sense::LessEqual, 1.0);
          }
          if (light(i, j) && light(i, l) && heavy(j, l)) {
            b.add(join("pair_jl", {i, j, l}), {{zij, 1.0}, {zil, 1.0}}, Sense::LessEqual, 1.0);
          }
          if (light(i, l) && light(j, l) && heavy(i, j)) {
            b.add(join("pair_ij", {i, j, l}), {{zil, 1.0}, {zjl, 1.0}}, Sense::LessEqual, 1.0);
          }
          if (light(i, j) && light(j, l) && heavy(i, l)) {
            b.add(join("pair_il", {i, j, l}), {{zij, 1.0}, {zjl, 1.0}}, Sense::LessEqual, 1.0);
          }
        }
      }
    }
  }

  if (variant == AlbaredaVariant::Extended) {
    b.set_objective(ObjectiveConvention::MaxInternal);
    return b.take();
  }

  // Final: weight-based replacements for the topological-order rows.
  for (std::size_t i = 0; i < n; ++i) {
    const auto iv = static_cast<Vertex>(i);
    std::vector<Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      const auto jv = static_cast<Vertex>(j);
      if (j != i && tables.comparable(iv, jv)) terms.push_back({b.z(iv, jv), static_cast<double>(g.weight(jv))});
    }
    b.add(join("weight", {iv}), std::move(terms), Sense::LessEqual, static_cast<double>(B - g.weight(iv)));
  }
  for (std::size_t pa = 0; pa < n; ++pa) {
    const Vertex i = order[pa];
    for (std::size_t pb = pa + 1; pb < n; ++pb) {
      const Vertex j = order[pb];
      if (!light(i, j)) continue;
      for (std::size_t pc = pb + 1; pc < n; ++pc) {
        const Vertex l = order[pc];
        if (tables.alpha(j, l) || !light(i, l)) continue;
        const auto a3 = tables.triple_weight(i, j, l);
        if (!a3 || *a3 <= B) continue;
        // i, j and l in one convex part would exceed the bound.
        b.add(join("fork", {i, j, l}), {{b.z(i, j), 1.0}, {b.z(i, l), 1.0}}, Sense::LessEqual, 1.0);
      }
    }
  }
  // Strict or weak order: part(a) <= part(c), and strict unless together.
  for (const auto& [a, c] : std::vector(b.fm().z_pairs)) {
    if (!light(a, c) && !is_edge(a, c)) continue;
    for (PartId s = 0; s < k; ++s) {
      std::vector<Term> terms = split_row(a, c, s, true);
      terms.push_back({b.z(a, c), -1.0});
      b.add(join("order", {a, c, s}), std::move(terms), Sense::LessEqual, 1.0);
    }
  }
  b.set_objective(ObjectiveConvention::MaxInternal);
  return b.take();
}

FormulationModel build_proposed(const Dag& g, const BuildOptions& opts) {
  Builder b(g, opts, Formulation::Proposed, "proposed");
  add_proposed_core(b, g);
  b.set_objective(ObjectiveConvention::MinCut);
  return b.take();
}

FormulationModel build_quantum(const Dag& g, const BuildOptions& opts, const QubitMatrix& nq, std::size_t max_qubits,
                               PartCountStrategy strategy) {
  if (nq.num_vertices() != g.num_vertices()) throw Error("qubit matrix does not match the graph");
  if (opts.objective_convention == ObjectiveConvention::MaxInternal) {
    throw ModelError(ModelError::Kind::Unsupported, "the quantum formulation only supports the min-cut objective");
  }
  if (nq.max_row_size() > max_qubits) {
    throw FormulationError(FormulationError::Kind::QubitCapacityInfeasible,
                           "a single vertex uses " + std::to_string(nq.max_row_size()) + " qubits, more than " +
                               std::to_string(max_qubits));
  }
  Builder b(g, opts, Formulation::Quantum, "quantum");
  add_proposed_core(b, g);
  const PartId k = b.k();
  const std::size_t n = g.num_vertices();
  FormulationModel& fm = b.fm();
  fm.num_qubits = nq.num_qubits();
  fm.max_qubits = max_qubits;
  fm.strategy = strategy;

  std::vector<std::vector<VarIndex>> pq(static_cast<std::size_t>(k));
  for (PartId s = 0; s < k; ++s) {
    for (std::size_t q = 0; q < nq.num_qubits(); ++q) {
      pq[s].push_back(fm.model.add_variable(join("pq", {s, static_cast<std::int64_t>(q)}), Domain::binary()));
    }
  }
  std::vector<VarIndex> used;
  if (strategy == PartCountStrategy::BigM) {
    for (PartId s = 0; s < k; ++s) used.push_back(fm.model.add_variable(join("u", {s}), Domain::binary()));
  }
  for (PartId s = 0; s < k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t q : nq.qubits_of(static_cast<Vertex>(i))) {
        b.add(join("qubit", {s, static_cast<std::int64_t>(q), static_cast<std::int64_t>(i)}),
              {{pq[s][q], 1.0}, {b.x(static_cast<Vertex>(i), s), -1.0}}, Sense::GreaterEqual, 0.0);
      }
    }
    std::vector<Term> terms;
    for (VarIndex v : pq[s]) terms.push_back({v, 1.0});
    b.add(join("capacity", {s}), std::move(terms), Sense::LessEqual, static_cast<double>(max_qubits));
  }

  if (strategy == PartCountStrategy::IncrementalK) {
    b.set_objective(ObjectiveConvention::MinCut);
    return b.take();
  }
  for (PartId s = 0; s < k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      b.add(join("used", {s, static_cast<std::int64_t>(i)}), {{used[s], 1.0}, {b.x(static_cast<Vertex>(i), s), -1.0}},
            Sense::GreaterEqual, 0.0);
    }
  }
  fm.big_m = 1 + g.total_cost();
  fm.convention = ObjectiveConvention::MinCut;
  std::vector<Term> terms;
  for (VarIndex u : used) terms.push_back({u, static_cast<double>(fm.big_m)});
  for (std::size_t e = 0; e < g.num_edges(); ++e) terms.push_back({fm.edge_z[e], static_cast<double>(g.edge(e).cost)});
  fm.model.set_objective(ObjectiveSense::Minimize, std::move(terms));
  return b.take();
}

FormulationModel build_formulation(Formulation kind, const Dag& g, const BuildOptions& opts) {
  switch (kind) {
    case Formulation::UndirectedBaseline: return build_undirected(g, opts);
    case Formulation::Nossack: return build_nossack(g, opts);
    case Formulation::Proposed: return build_proposed(g, opts);
    case Formulation::AlbaredaBase:
    case Formulation::AlbaredaExtended:
    case Formulation::AlbaredaFinal: {
      PreprocessTables tables(g);
      if (kind != Formulation::AlbaredaBase) tables.compute_triples(g);
      const AlbaredaVariant v = kind == Formulation::AlbaredaBase       ? AlbaredaVariant::Base
                                : kind == Formulation::AlbaredaExtended ? AlbaredaVariant::Extended
                                                                        : AlbaredaVariant::Final;
      return build_albareda(g, opts, tables, v);
    }
    case Formulation::Quantum: break;
  }
  throw Error("the quantum formulation needs a qubit matrix; use build_quantum");
}

DecodedPartition decode_partition(const FormulationModel& fm, const Assignment& assignment) {
  const LinearModel& m = fm.model;
  std::vector<Rational> values(m.num_variables(), Rational(0));
  for (std::size_t v = 0; v < m.num_variables(); ++v) {
    if (auto value = assignment.get(m.variable(v).name)) values[v] = *value;
  }
  std::vector<PartId> parts(fm.num_vertices, -1);
  for (std::size_t i = 0; i < fm.num_vertices; ++i) {
    int count = 0;
    for (PartId s = 0; s < fm.k; ++s) {
      auto v = assignment.get(join("x", {static_cast<std::int64_t>(i), s}));
      if (!v || *v == Rational(0)) continue;
      if (*v != Rational(1)) {
        throw FormulationError(FormulationError::Kind::AmbiguousAssignment,
                               "x_" + std::to_string(i) + "_" + std::to_string(s) + " is neither 0 nor 1");
      }
      ++count;
      parts[i] = s;
    }
    if (count != 1) {
      throw FormulationError(FormulationError::Kind::AmbiguousAssignment,
                             "vertex " + std::to_string(i) + " is assigned to " + std::to_string(count) + " parts");
    }
  }
  DecodedPartition out;
  out.partition = Partition(parts, fm.k);
  out.objective = objective_value(m, values);
  Rational z_sum(0);
  for (std::size_t e = 0; e < fm.edge_z.size(); ++e) z_sum += values[fm.edge_z[e]] * Rational(fm.edge_cost[e]);
  out.min_cut = fm.z_marks_cut ? z_sum : Rational(fm.total_cost) - z_sum;
  std::vector<char> seen(static_cast<std::size_t>(fm.k), 0);
  for (PartId s : parts) seen[static_cast<std::size_t>(s)] = 1;
  out.parts_used = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
  return out;
}

Assignment encode_partition(const FormulationModel& fm, const Dag& g, const Partition& p, const QubitMatrix* nq) {
  if (p.size() != g.num_vertices() || fm.num_vertices != g.num_vertices()) {
    throw PartitionArityMismatch("partition has " + std::to_string(p.size()) + " entries for " +
                                  std::to_string(g.num_vertices()) + " vertices");
  }
  if (p.k != fm.k) throw FormulationError(FormulationError::Kind::InvalidK, "partition k differs from the model k");
  const PartId k = fm.k;
  const QuotientGraph qg = quotient_graph(g, p);
  const bool needs_topological = fm.kind != Formulation::UndirectedBaseline && fm.kind != Formulation::Nossack;
  if (needs_topological && !is_topologically_numbered(g, p)) {
    throw FormulationError(FormulationError::Kind::IncompatibleNumbering,
                           "the model requires part ids in topological order of the quotient graph");
  }

  Assignment a;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (PartId s = 0; s < k; ++s) a.set(join("x", {static_cast<std::int64_t>(i), s}), p[i] == s ? 1 : 0);
  }
  for (const auto& [u, v] : fm.z_pairs) {
    const bool same = p.part_of(u) == p.part_of(v);
    a.set(join("z", {u, v}), (same != fm.z_marks_cut) ? 1 : 0);
  }
  if (fm.has_y) {
    for (PartId s = 0; s < k; ++s) {
      for (PartId t = 0; t < k; ++t) {
        if (s != t) a.set(join("y", {s, t}), qg.has_edge(s, t) ? 1 : 0);
      }
    }
  }

  std::vector<std::int64_t> count(static_cast<std::size_t>(k), 0);
  for (PartId s : p.assignment) ++count[static_cast<std::size_t>(s)];

  if (fm.has_pi) {
    for (PartId s = 1; s < k; ++s) {
      if (count[s] > count[s - 1]) {
        throw FormulationError(FormulationError::Kind::IncompatibleNumbering,
                               "the model requires part sizes non-increasing in part id");
      }
    }
    if (qg.find_cycle()) {
      throw FormulationError(FormulationError::Kind::IncompatibleNumbering, "the quotient graph has a cycle");
    }
    // Rank of each non-empty part in the smallest-id-first topological order.
    std::vector<int> indegree(static_cast<std::size_t>(k), 0);
    for (const Edge& qe : qg.edges) ++indegree[static_cast<std::size_t>(qe.to)];
    std::vector<char> done(static_cast<std::size_t>(k), 0);
    std::vector<std::int64_t> rank(static_cast<std::size_t>(k), 0);
    std::int64_t next = 0;
    for (;;) {
      PartId pick = -1;
      for (PartId s = 0; s < k; ++s) {
        if (!done[s] && count[s] > 0 && indegree[s] == 0) {
          pick = s;
          break;
        }
      }
      if (pick < 0) break;
      done[pick] = 1;
      rank[pick] = next++;
      for (const Edge& qe : qg.edges) {
        if (qe.from == pick) --indegree[static_cast<std::size_t>(qe.to)];
      }
    }
    for (PartId s = 0; s < k; ++s) a.set(join("pi", {s}), rank[s]);
  }

  if (fm.kind == Formulation::Quantum) {
    if (nq == nullptr || nq->num_vertices() != g.num_vertices()) throw Error("encoding needs the qubit matrix");
    for (PartId s = 0; s < k; ++s) {
      std::vector<char> used(fm.num_qubits, 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != s) continue;
        for (std::size_t q : nq->qubits_of(static_cast<Vertex>(i))) used[q] = 1;
      }
      for (std::size_t q = 0; q < fm.num_qubits; ++q) a.set(join("pq", {s, static_cast<std::int64_t>(q)}), used[q]);
      if (fm.strategy == PartCountStrategy::BigM) a.set(join("u", {s}), count[s] > 0 ? 1 : 0);
    }
  }
  return a;
}

}  // namespace acypart
