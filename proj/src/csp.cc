// Copyright 2026 The Multicut Labeling Authors
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

#include "multicut/csp.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CspLabel MaskOf(const std::vector<int>& positions) {
  CspLabel mask = 0;
  for (int i : positions) mask |= CspLabel{1} << i;
  return mask;
}

// Hands out names not yet taken, prefixing '~' until one is free.
class FreshNames {
 public:
  template <typename Range>
  explicit FreshNames(const Range& taken) : used_(taken.begin(), taken.end()) {}

  std::string Take(std::string base) {
    while (used_.count(base)) base = "~" + base;
    used_.insert(base);
    return base;
  }

 private:
  std::set<std::string> used_;
};

std::vector<std::string> EdgeIds(const SupplyGraph& g) {
  std::vector<std::string> ids;
  for (const SupplyEdge& e : g.edges) ids.push_back(e.id);
  return ids;
}

// A predicate value forbids the labels when it is infinite, or positive on
// an infinite-weight tuple. Zero-weight tuples still enforce infinities.
bool IsHard(double value, const Weight& weight) {
  return std::isinf(value) || (value > 0 && weight.is_infinite());
}

double TermCost(double value, const Weight& weight) {
  if (IsHard(value, weight)) return kInf;
  return value == 0 ? 0.0 : weight.value() * value;
}

struct Reduction {
  CspInstance csp;
  std::vector<int> tuple_edge;  // supply edge behind each tuple, or -1
  DemandAnalysis analysis;
};

// Structural edges encode Y and Z; they produce no tuple.
std::vector<char> StructuralEdges(const MulticutInstance& inst,
                                  const DemandAnalysis& a) {
  const SupplyGraph& g = inst.supply;
  std::vector<char> out(g.num_edges(), 0);
  auto source_pos = [&](int v) {
    auto it = std::find(a.sources.begin(), a.sources.end(), v);
    return it == a.sources.end() ? -1
                                 : static_cast<int>(it - a.sources.begin());
  };
  auto sink_pos = [&](int v) {
    auto it = std::find(a.sinks.begin(), a.sinks.end(), v);
    return it == a.sinks.end() ? -1 : static_cast<int>(it - a.sinks.begin());
  };
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    if (!edge.directed || edge.weight.is_finite()) continue;
    const int from = source_pos(edge.tail);
    if (from < 0) continue;
    if (int to = source_pos(edge.head);
        to >= 0 && to != from &&
        std::binary_search(a.y[to].begin(), a.y[to].end(), from)) {
      out[e] = 1;
    }
    if (int to = sink_pos(edge.head);
        to >= 0 && std::binary_search(a.z[to].begin(), a.z[to].end(), from)) {
      out[e] = 1;
    }
  }
  return out;
}

Reduction Reduce(const MulticutInstance& instance) {
  CheckAssumptions(instance);
  Reduction r;
  r.analysis = AnalyzeDemand(instance.demand);
  const DemandAnalysis& a = r.analysis;
  r.csp.vertices = instance.supply.vertices;
  r.csp.family = FamilyFromSets(a.p(), a.q(), a.y, a.z);
  for (int i = 0; i < a.p(); ++i) {
    r.csp.tuples.push_back(
        {{a.sources[i]}, {PredicateKind::kPsiA, i}, Weight(1.0)});
    r.tuple_edge.push_back(-1);
  }
  for (int j = 0; j < a.q(); ++j) {
    r.csp.tuples.push_back(
        {{a.sinks[j]}, {PredicateKind::kPsiB, j}, Weight(1.0)});
    r.tuple_edge.push_back(-1);
  }
  const std::vector<char> structural = StructuralEdges(instance, a);
  const SupplyGraph& g = instance.supply;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (structural[e]) continue;
    const SupplyEdge& edge = g.edges[e];
    PredicateRef ref{edge.directed ? PredicateKind::kC : PredicateKind::kNae2,
                     0};
    r.csp.tuples.push_back({{edge.tail, edge.head}, ref, edge.weight});
    r.tuple_edge.push_back(e);
  }
  return r;
}

// Bit position of each source in the Label LP terminal order, and the mask
// of the remaining terminals.
struct BitMap {
  std::vector<int> source_bit;
  Label others = 0;
};

BitMap MapBits(const MulticutInstance& inst, const DemandAnalysis& a) {
  BitMap m;
  for (int v : a.sources) {
    m.source_bit.push_back(inst.demand.TerminalPosition(v));
  }
  for (int i = 0; i < inst.demand.num_terminals(); ++i) {
    if (std::find(m.source_bit.begin(), m.source_bit.end(), i) ==
        m.source_bit.end()) {
      m.others |= Label{1} << i;
    }
  }
  return m;
}

CspLabel Project(Label label, const BitMap& m) {
  CspLabel out = 0;
  for (size_t i = 0; i < m.source_bit.size(); ++i) {
    if (label >> m.source_bit[i] & 1) out |= CspLabel{1} << i;
  }
  return out;
}

Label Extend(CspLabel sigma, const BitMap& m) {
  Label out = m.others;
  for (size_t i = 0; i < m.source_bit.size(); ++i) {
    if (sigma >> i & 1) out |= Label{1} << m.source_bit[i];
  }
  return out;
}

}  // namespace

PredicateFamily FamilyFromSets(int p, int q, std::vector<std::vector<int>> y,
                               std::vector<std::vector<int>> z) {
  if (p > kMaxFamilySources) {
    throw Error(ErrorCode::kSizeGuard, "predicate tables support at most " +
                                           std::to_string(kMaxFamilySources) +
                                           " sources");
  }
  if (p < 0 || q < 0 || static_cast<int>(y.size()) != p ||
      static_cast<int>(z.size()) != q) {
    throw Error(ErrorCode::kMalformedFamily, "family header sizes disagree");
  }
  for (auto* sets : {&y, &z}) {
    for (auto& s : *sets) {
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end() ||
          (!s.empty() && (s.front() < 0 || s.back() >= p))) {
        throw Error(ErrorCode::kMalformedFamily,
                    "family sets must hold distinct source positions");
      }
    }
  }
  // The graph implied by z must reproduce every position and every Y set.
  DemandGraph h;
  for (int v = 0; v < p + q; ++v) h.terminals.push_back(v);
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < p; ++i) {
      if (!std::binary_search(z[j].begin(), z[j].end(), i)) {
        h.edges.emplace_back(i, p + j);
      }
    }
  }
  DemandAnalysis a = AnalyzeDemand(h);
  if (a.p() != p || a.q() != q) {
    throw Error(ErrorCode::kMalformedFamily,
                "every source needs a demand and every sink a source");
  }
  if (a.y != y) {
    throw Error(ErrorCode::kMalformedFamily,
                "Y sets do not match the demand graph implied by Z");
  }

  PredicateFamily f;
  f.p = p;
  f.q = q;
  f.y = std::move(y);
  f.z = std::move(z);
  const CspLabel size = f.num_labels();
  for (int i = 0; i < p; ++i) {
    const CspLabel want = MaskOf(f.y[i]);
    std::vector<double> table(size, kInf);
    table[want] = 0.0;
    f.psi_a.push_back(std::move(table));
  }
  for (int j = 0; j < q; ++j) {
    const CspLabel want = MaskOf(f.z[j]);
    std::vector<double> table(size, kInf);
    table[want] = 0.0;
    f.psi_b.push_back(std::move(table));
  }
  f.c.assign(size * size, 0.0);
  f.nae2.assign(size * size, 0.0);
  for (CspLabel s1 = 0; s1 < size; ++s1) {
    for (CspLabel s2 = 0; s2 < size; ++s2) {
      f.c[s1 * size + s2] = (s1 & ~s2) ? 1.0 : 0.0;
      f.nae2[s1 * size + s2] = s1 != s2 ? 1.0 : 0.0;
    }
  }
  return f;
}

PredicateFamily BuildBeta(const DemandGraph& demand) {
  DemandAnalysis a = AnalyzeDemand(demand);
  return FamilyFromSets(a.p(), a.q(), a.y, a.z);
}

std::string PredicateName(const PredicateRef& ref) {
  switch (ref.kind) {
    case PredicateKind::kPsiA:
      return "psi_a:" + std::to_string(ref.index + 1);
    case PredicateKind::kPsiB:
      return "psi_b:" + std::to_string(ref.index + 1);
    case PredicateKind::kC:
      return "C";
    case PredicateKind::kNae2:
      return "NAE2";
  }
  return "?";
}

PredicateRef ParsePredicateName(const std::string& name) {
  if (name == "C") return {PredicateKind::kC, 0};
  if (name == "NAE2") return {PredicateKind::kNae2, 0};
  for (auto [prefix, kind] : {std::pair{"psi_a:", PredicateKind::kPsiA},
                              std::pair{"psi_b:", PredicateKind::kPsiB}}) {
    const std::string p = prefix;
    if (name.rfind(p, 0) != 0) continue;
    const std::string digits = name.substr(p.size());
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      break;
    }
    const int index = std::stoi(digits);
    if (index < 1) break;
    return {kind, index - 1};
  }
  throw Error(ErrorCode::kParse, "unknown predicate '" + name + "'");
}

void ValidateCsp(const CspInstance& csp) {
  const PredicateFamily& f = csp.family;
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const CspTuple& tuple = csp.tuples[t];
    const std::string where = "tuple " + std::to_string(t);
    if (static_cast<int>(tuple.vars.size()) != tuple.predicate.arity()) {
      throw Error(ErrorCode::kValidation, where + ": arity does not match " +
                                              PredicateName(tuple.predicate));
    }
    for (int v : tuple.vars) {
      if (v < 0 || v >= csp.num_vertices()) {
        throw Error(ErrorCode::kValidation, where + ": unknown vertex");
      }
    }
    const int index = tuple.predicate.index;
    if ((tuple.predicate.kind == PredicateKind::kPsiA &&
         (index < 0 || index >= f.p)) ||
        (tuple.predicate.kind == PredicateKind::kPsiB &&
         (index < 0 || index >= f.q))) {
      throw Error(ErrorCode::kValidation, where + ": " +
                                              PredicateName(tuple.predicate) +
                                              " is not in the family");
    }
    if (!(tuple.weight.value() >= 0)) {
      throw Error(ErrorCode::kValidation, where + ": negative weight");
    }
  }
}

double PredicateValue(const PredicateFamily& f, const PredicateRef& ref,
                      const CspLabel* labels) {
  const CspLabel size = f.num_labels();
  switch (ref.kind) {
    case PredicateKind::kPsiA:
      return f.psi_a[ref.index][labels[0]];
    case PredicateKind::kPsiB:
      return f.psi_b[ref.index][labels[0]];
    case PredicateKind::kC:
      return f.c[labels[0] * size + labels[1]];
    case PredicateKind::kNae2:
      return f.nae2[labels[0] * size + labels[1]];
  }
  return kInf;
}

MulticutInstance UndirectedGadget(const MulticutInstance& instance) {
  const SupplyGraph& g = instance.supply;
  MulticutInstance out;
  out.demand = instance.demand;
  for (const std::string& v : g.vertices) out.supply.AddVertex(v);
  FreshNames vertex_names(g.vertices);
  FreshNames edge_names(EdgeIds(g));
  const Weight inf = Weight::Infinite();
  for (const SupplyEdge& e : g.edges) {
    if (e.directed) {
      out.supply.AddDirectedEdge(e.id, e.tail, e.head, e.weight);
      continue;
    }
    const int x = out.supply.AddVertex(vertex_names.Take("~x:" + e.id));
    const int y = out.supply.AddVertex(vertex_names.Take("~y:" + e.id));
    out.supply.AddDirectedEdge(edge_names.Take(e.id + "~ux"), e.tail, x, inf);
    out.supply.AddDirectedEdge(edge_names.Take(e.id + "~vx"), e.head, x, inf);
    out.supply.AddDirectedEdge(edge_names.Take(e.id + "~yu"), y, e.tail, inf);
    out.supply.AddDirectedEdge(edge_names.Take(e.id + "~yv"), y, e.head, inf);
    out.supply.AddDirectedEdge(e.id, x, y, e.weight);
  }
  return out;
}

MulticutInstance PreprocessSupply(const MulticutInstance& instance) {
  const DemandAnalysis a = AnalyzeDemand(instance.demand);
  const SupplyGraph& g = instance.supply;
  MulticutInstance out;
  out.supply = g;
  FreshNames vertex_names(g.vertices);
  FreshNames edge_names(EdgeIds(g));
  const Weight inf = Weight::Infinite();

  std::vector<int> copy(g.num_vertices(), -1);
  std::vector<int> source_copy, sink_copy;
  for (int v : a.sources) {
    const int c = out.supply.AddVertex(vertex_names.Take("~" + g.vertices[v]));
    out.supply.AddDirectedEdge(edge_names.Take("~attach:" + g.vertices[v]), c,
                               v, inf);
    copy[v] = c;
    source_copy.push_back(c);
  }
  for (int v : a.sinks) {
    const int c = out.supply.AddVertex(vertex_names.Take("~" + g.vertices[v]));
    out.supply.AddDirectedEdge(edge_names.Take("~attach:" + g.vertices[v]), v,
                               c, inf);
    copy[v] = c;
    sink_copy.push_back(c);
  }
  auto moved = [&](int v) { return copy[v] >= 0 ? copy[v] : v; };
  for (int v : instance.demand.terminals)
    out.demand.terminals.push_back(moved(v));
  for (auto [s, t] : instance.demand.edges) {
    out.demand.edges.emplace_back(moved(s), moved(t));
  }

  const std::vector<std::string>& names = out.supply.vertices;
  for (int i = 0; i < a.p(); ++i) {
    for (int from : a.y[i]) {
      if (from == i) continue;
      const int u = source_copy[from], v = source_copy[i];
      out.supply.AddDirectedEdge(
          edge_names.Take("~Y:" + names[u] + ">" + names[v]), u, v, inf);
    }
  }
  for (int j = 0; j < a.q(); ++j) {
    for (int i : a.z[j]) {
      const int u = source_copy[i], v = sink_copy[j];
      out.supply.AddDirectedEdge(
          edge_names.Take("~Z:" + names[u] + ">" + names[v]), u, v, inf);
    }
  }
  return out;
}

void CheckAssumptions(const MulticutInstance& instance) {
  const DemandAnalysis a = AnalyzeDemand(instance.demand);
  const SupplyGraph& g = instance.supply;
  const std::vector<char> structural = StructuralEdges(instance, a);
  auto has_edge = [&](int u, int v) {
    for (int e = 0; e < g.num_edges(); ++e) {
      if (structural[e] && g.edges[e].tail == u && g.edges[e].head == v) {
        return true;
      }
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kAssumptionViolation, what);
  };
  for (int i = 0; i < a.p(); ++i) {
    for (int from : a.y[i]) {
      if (from != i && !has_edge(a.sources[from], a.sources[i])) {
        fail("missing infinite edge " + g.vertices[a.sources[from]] + " -> " +
             g.vertices[a.sources[i]]);
      }
    }
  }
  for (int j = 0; j < a.q(); ++j) {
    for (int i : a.z[j]) {
      if (!has_edge(a.sources[i], a.sinks[j])) {
        fail("missing infinite edge " + g.vertices[a.sources[i]] + " -> " +
             g.vertices[a.sinks[j]]);
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    if (!edge.directed) continue;
    if (std::find(a.sinks.begin(), a.sinks.end(), edge.tail) != a.sinks.end()) {
      fail("edge '" + edge.id + "' leaves sink " + g.vertices[edge.tail]);
    }
    if (!structural[e] && std::find(a.sources.begin(), a.sources.end(),
                                    edge.head) != a.sources.end()) {
      fail("edge '" + edge.id + "' enters source " + g.vertices[edge.head]);
    }
  }
}

CspInstance MulticutToCsp(const MulticutInstance& instance) {
  return Reduce(instance).csp;
}

MulticutInstance CspToMulticut(const CspInstance& csp) {
  ValidateCsp(csp);
  const PredicateFamily& given = csp.family;
  const PredicateFamily f = FamilyFromSets(given.p, given.q, given.y, given.z);
  auto same = [](const std::vector<double>& a, const std::vector<double>& b) {
    return a.empty() || a == b;
  };
  bool tables_match = given.psi_a.size() <= f.psi_a.size() &&
                      given.psi_b.size() <= f.psi_b.size() &&
                      same(given.c, f.c) && same(given.nae2, f.nae2);
  for (size_t i = 0; tables_match && i < given.psi_a.size(); ++i) {
    tables_match = same(given.psi_a[i], f.psi_a[i]);
  }
  for (size_t j = 0; tables_match && j < given.psi_b.size(); ++j) {
    tables_match = same(given.psi_b[j], f.psi_b[j]);
  }
  if (!tables_match) {
    throw Error(ErrorCode::kMalformedFamily,
                "predicate tables differ from the family of (Y, Z)");
  }

  MulticutInstance out;
  for (const std::string& v : csp.vertices) out.supply.AddVertex(v);
  FreshNames vertex_names(csp.vertices);
  std::vector<char> used(csp.num_vertices(), 0);
  auto representative = [&](PredicateKind kind, int index,
                            const std::string& dummy) {
    for (const CspTuple& t : csp.tuples) {
      if (t.predicate == PredicateRef{kind, index} && !used[t.vars[0]]) {
        used[t.vars[0]] = 1;
        return t.vars[0];
      }
    }
    used.push_back(1);
    return out.supply.AddVertex(vertex_names.Take(dummy));
  };
  std::vector<int> a_rep, b_rep;
  for (int i = 0; i < f.p; ++i) {
    a_rep.push_back(
        representative(PredicateKind::kPsiA, i, "~a" + std::to_string(i + 1)));
  }
  for (int j = 0; j < f.q; ++j) {
    b_rep.push_back(
        representative(PredicateKind::kPsiB, j, "~b" + std::to_string(j + 1)));
  }

  std::vector<std::string> ids;
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    ids.push_back("t" + std::to_string(t));
  }
  FreshNames edge_names(ids);
  const Weight inf = Weight::Infinite();
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const CspTuple& tuple = csp.tuples[t];
    const std::string& id = ids[t];
    switch (tuple.predicate.kind) {
      case PredicateKind::kPsiA:
      case PredicateKind::kPsiB: {
        const int rep = tuple.predicate.kind == PredicateKind::kPsiA
                            ? a_rep[tuple.predicate.index]
                            : b_rep[tuple.predicate.index];
        if (rep != tuple.vars[0]) {
          out.supply.AddUndirectedEdge(id, rep, tuple.vars[0], inf);
        }
        break;
      }
      case PredicateKind::kC:
        out.supply.AddDirectedEdge(id, tuple.vars[0], tuple.vars[1],
                                   tuple.weight);
        break;
      case PredicateKind::kNae2:
        out.supply.AddUndirectedEdge(id, tuple.vars[0], tuple.vars[1],
                                     tuple.weight);
        break;
    }
  }
  const std::vector<std::string>& names = out.supply.vertices;
  for (int i = 0; i < f.p; ++i) {
    for (int from : f.y[i]) {
      if (from == i) continue;
      out.supply.AddDirectedEdge(
          edge_names.Take("~Y:" + names[a_rep[from]] + ">" + names[a_rep[i]]),
          a_rep[from], a_rep[i], inf);
    }
  }
  for (int j = 0; j < f.q; ++j) {
    for (int i : f.z[j]) {
      out.supply.AddDirectedEdge(
          edge_names.Take("~Z:" + names[a_rep[i]] + ">" + names[b_rep[j]]),
          a_rep[i], b_rep[j], inf);
    }
  }
  for (int v : a_rep) out.demand.terminals.push_back(v);
  for (int v : b_rep) out.demand.terminals.push_back(v);
  for (int i = 0; i < f.p; ++i) {
    for (int j = 0; j < f.q; ++j) {
      if (!std::binary_search(f.z[j].begin(), f.z[j].end(), i)) {
        out.demand.edges.emplace_back(a_rep[i], b_rep[j]);
      }
    }
  }
  return out;
}

BasicLp BuildBasicLp(const CspInstance& csp, int64_t max_table) {
  ValidateCsp(csp);
  const PredicateFamily& f = csp.family;
  const CspLabel size = f.num_labels();
  int max_arity = 1;
  for (const CspTuple& t : csp.tuples) {
    max_arity = std::max(max_arity, t.predicate.arity());
  }
  const int64_t table = max_arity == 1 ? int64_t{size} : int64_t{size} * size;
  if (table > max_table) {
    throw Error(ErrorCode::kSizeGuard,
                "tuple tables of " + std::to_string(table) +
                    " entries exceed the cap of " + std::to_string(max_table));
  }

  BasicLp out;
  LinearProgram& lp = out.lp;
  out.vertex_var.assign(csp.num_vertices(), std::vector<int>(size, -1));
  for (int v = 0; v < csp.num_vertices(); ++v) {
    std::vector<LpTerm> row;
    for (CspLabel s = 0; s < size; ++s) {
      out.vertex_var[v][s] = lp.AddVariable(
          "z_" + csp.vertices[v] + "_" + std::to_string(s), 0.0, 1.0);
      row.push_back({out.vertex_var[v][s], 1.0});
    }
    lp.AddConstraint(std::move(row), Relation::kEqual, 1.0,
                     "dist_" + csp.vertices[v]);
  }
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const CspTuple& tuple = csp.tuples[t];
    const int arity = tuple.predicate.arity();
    const CspLabel entries = arity == 1 ? size : size * size;
    std::vector<int>& vars = out.tuple_var.emplace_back(entries, -1);
    for (CspLabel alpha = 0; alpha < entries; ++alpha) {
      const CspLabel labels[2] = {arity == 1 ? alpha : alpha / size,
                                  alpha % size};
      const double value = PredicateValue(f, tuple.predicate, labels);
      if (IsHard(value, tuple.weight)) continue;
      vars[alpha] =
          lp.AddVariable("zt" + std::to_string(t) + "_" + std::to_string(alpha),
                         0.0, 1.0, TermCost(value, tuple.weight));
    }
    for (int pos = 0; pos < arity; ++pos) {
      const int v = tuple.vars[pos];
      for (CspLabel s = 0; s < size; ++s) {
        std::vector<LpTerm> row = {{out.vertex_var[v][s], -1.0}};
        for (CspLabel alpha = 0; alpha < entries; ++alpha) {
          const CspLabel at = arity == 1 ? alpha
                              : pos == 0 ? alpha / size
                                         : alpha % size;
          if (at == s && vars[alpha] >= 0) row.push_back({vars[alpha], 1.0});
        }
        lp.AddConstraint(std::move(row), Relation::kEqual, 0.0);
      }
    }
  }
  return out;
}

BasicSolution ExtractBasicSolution(const BasicLp& blp,
                                   std::span<const double> primal) {
  BasicSolution z;
  auto read = [&](const std::vector<int>& vars) {
    std::vector<double> row(vars.size(), 0.0);
    for (size_t i = 0; i < vars.size(); ++i) {
      if (vars[i] >= 0) row[i] = primal[vars[i]];
    }
    return row;
  };
  for (const auto& vars : blp.vertex_var) z.z_vertex.push_back(read(vars));
  for (const auto& vars : blp.tuple_var) z.z_tuple.push_back(read(vars));
  return z;
}

BasicLpSolution SolveBasicLp(const CspInstance& csp, int64_t max_table,
                             const LpOptions& options) {
  BasicLp blp = BuildBasicLp(csp, max_table);
  LpResult r = SolveLp(blp.lp, options);
  if (!r.optimal()) {
    throw Error(
        r.status == LpStatus::kInfeasible ? ErrorCode::kInfeasible
                                          : ErrorCode::kNumericFailure,
        std::string("basic LP ended with status ") + LpStatusName(r.status));
  }
  return {r.objective_value, ExtractBasicSolution(blp, r.primal)};
}

double BasicCost(const CspInstance& csp, const BasicSolution& z,
                 double tolerance) {
  const PredicateFamily& f = csp.family;
  const CspLabel size = f.num_labels();
  double cost = 0.0;
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const CspTuple& tuple = csp.tuples[t];
    const int arity = tuple.predicate.arity();
    for (CspLabel alpha = 0; alpha < z.z_tuple[t].size(); ++alpha) {
      const double mass = z.z_tuple[t][alpha];
      const CspLabel labels[2] = {arity == 1 ? alpha : alpha / size,
                                  alpha % size};
      const double term =
          TermCost(PredicateValue(f, tuple.predicate, labels), tuple.weight);
      if (std::isinf(term)) {
        if (mass > tolerance) return kInf;
      } else {
        cost += term * mass;
      }
    }
  }
  return cost;
}

bool IsBasicLpFeasible(const CspInstance& csp, const BasicSolution& z,
                       double tol, std::string* reason) {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return false;
  };
  const CspLabel size = csp.family.num_labels();
  if (static_cast<int>(z.z_vertex.size()) != csp.num_vertices() ||
      z.z_tuple.size() != csp.tuples.size()) {
    return fail("dimensions");
  }
  for (int v = 0; v < csp.num_vertices(); ++v) {
    if (z.z_vertex[v].size() != size) return fail("dimensions");
    double sum = 0.0;
    for (double p : z.z_vertex[v]) {
      if (p < -tol || p > 1 + tol) return fail("vertex bounds");
      sum += p;
    }
    if (std::fabs(sum - 1) > tol) {
      return fail("vertex distribution of " + csp.vertices[v]);
    }
  }
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const CspTuple& tuple = csp.tuples[t];
    const int arity = tuple.predicate.arity();
    const std::vector<double>& joint = z.z_tuple[t];
    if (joint.size() != (arity == 1 ? size : size * size)) {
      return fail("dimensions");
    }
    for (double p : joint) {
      if (p < -tol || p > 1 + tol) return fail("tuple bounds");
    }
    for (int pos = 0; pos < arity; ++pos) {
      for (CspLabel s = 0; s < size; ++s) {
        double sum = 0.0;
        for (CspLabel alpha = 0; alpha < joint.size(); ++alpha) {
          const CspLabel at = arity == 1 ? alpha
                              : pos == 0 ? alpha / size
                                         : alpha % size;
          if (at == s) sum += joint[alpha];
        }
        if (std::fabs(sum - z.z_vertex[tuple.vars[pos]][s]) > tol) {
          return fail("marginals of tuple " + std::to_string(t));
        }
      }
    }
  }
  return true;
}

BasicSolution LabelToBasic(const MulticutInstance& instance,
                           const LabelSolution& solution) {
  std::string why;
  if (!IsLabelLpFeasible(instance, solution, 1e-7, &why)) {
    throw Error(ErrorCode::kInfeasible, "label solution is infeasible: " + why);
  }
  const Reduction r = Reduce(instance);
  const BitMap bits = MapBits(instance, r.analysis);
  const Label width = Label{1} << solution.k;
  const CspLabel size = r.csp.family.num_labels();

  BasicSolution z;
  for (const auto& row : solution.z_vertex) {
    std::vector<double> out(size, 0.0);
    for (Label l = 0; l < width; ++l) out[Project(l, bits)] += row[l];
    z.z_vertex.push_back(std::move(out));
  }
  for (size_t t = 0; t < r.csp.tuples.size(); ++t) {
    const CspTuple& tuple = r.csp.tuples[t];
    if (tuple.predicate.arity() == 1) {
      z.z_tuple.push_back(z.z_vertex[tuple.vars[0]]);
      continue;
    }
    const std::vector<double>& joint = solution.z_edge[r.tuple_edge[t]];
    std::vector<double> out(size * size, 0.0);
    for (Label a = 0; a < width; ++a) {
      for (Label b = 0; b < width; ++b) {
        out[Project(a, bits) * size + Project(b, bits)] += joint[a * width + b];
      }
    }
    z.z_tuple.push_back(std::move(out));
  }
  return z;
}

LabelSolution BasicToLabel(const MulticutInstance& instance,
                           const BasicSolution& z) {
  const Reduction r = Reduce(instance);
  std::string why;
  if (!IsBasicLpFeasible(r.csp, z, 1e-7, &why)) {
    throw Error(ErrorCode::kInfeasible, "basic solution is infeasible: " + why);
  }
  if (std::isinf(BasicCost(r.csp, z, 1e-7))) {
    throw Error(ErrorCode::kInfeasible, "basic solution has infinite cost");
  }
  const int k = instance.demand.num_terminals();
  if (k > kMaxFamilySources) {
    throw Error(ErrorCode::kSizeGuard, "too many terminals for label tables");
  }
  const BitMap bits = MapBits(instance, r.analysis);
  const Label width = Label{1} << k;
  const CspLabel size = r.csp.family.num_labels();
  const SupplyGraph& g = instance.supply;

  LabelSolution out;
  out.k = k;
  for (const auto& row : z.z_vertex) {
    std::vector<double> ext(width, 0.0);
    for (CspLabel s = 0; s < size; ++s) ext[Extend(s, bits)] = row[s];
    out.z_vertex.push_back(std::move(ext));
  }
  std::vector<int> edge_tuple(g.num_edges(), -1);
  for (size_t t = 0; t < r.tuple_edge.size(); ++t) {
    if (r.tuple_edge[t] >= 0) edge_tuple[r.tuple_edge[t]] = static_cast<int>(t);
  }
  out.x.x.assign(g.num_edges(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    const TransportMode mode =
        edge.directed ? TransportMode::kDirected : TransportMode::kUndirected;
    std::vector<double> joint;
    if (edge_tuple[e] >= 0) {
      joint.assign(width * width, 0.0);
      const std::vector<double>& zt = z.z_tuple[edge_tuple[e]];
      for (CspLabel s1 = 0; s1 < size; ++s1) {
        for (CspLabel s2 = 0; s2 < size; ++s2) {
          joint[Extend(s1, bits) * width + Extend(s2, bits)] =
              zt[s1 * size + s2];
        }
      }
    } else {
      joint = TransportLabels(out.z_vertex[edge.tail], out.z_vertex[edge.head],
                              mode)
                  .joint;
    }
    double cut = 0.0;
    for (Label a = 0; a < width; ++a) {
      for (Label b = 0; b < width; ++b) {
        if (PairCost(a, b, mode)) cut += joint[a * width + b];
      }
    }
    out.x.x[e] = cut;
    out.z_edge.push_back(std::move(joint));
  }
  return out;
}

double AssignmentCost(const CspInstance& csp,
                      const std::vector<CspLabel>& labels) {
  double cost = 0.0;
  for (const CspTuple& t : csp.tuples) {
    CspLabel at[2] = {labels[t.vars[0]], 0};
    if (t.vars.size() > 1) at[1] = labels[t.vars[1]];
    cost += TermCost(PredicateValue(csp.family, t.predicate, at), t.weight);
  }
  return cost;
}

CspAssignment BruteForceCsp(const CspInstance& csp, int64_t max_assignments) {
  ValidateCsp(csp);
  const int n = csp.num_vertices();
  const CspLabel size = csp.family.num_labels();

  // Unary hard constraints shrink the domains up front.
  std::vector<std::vector<CspLabel>> domain(n);
  int64_t product = 1;
  for (int v = 0; v < n; ++v) {
    for (CspLabel s = 0; s < size; ++s) {
      bool ok = true;
      for (const CspTuple& t : csp.tuples) {
        if (t.predicate.arity() == 1 && t.vars[0] == v &&
            IsHard(PredicateValue(csp.family, t.predicate, &s), t.weight)) {
          ok = false;
        }
      }
      if (ok) domain[v].push_back(s);
    }
    if (domain[v].empty()) {
      throw Error(ErrorCode::kInfeasible,
                  "no finite-cost assignment: " + csp.vertices[v] +
                      " has no admissible label");
    }
    product *= static_cast<int64_t>(domain[v].size());
    if (product > max_assignments) {
      throw Error(ErrorCode::kSizeGuard, "more than " +
                                             std::to_string(max_assignments) +
                                             " candidate assignments");
    }
  }
  // Each tuple is charged at its last vertex in enumeration order.
  std::vector<std::vector<int>> charged(n);
  for (size_t t = 0; t < csp.tuples.size(); ++t) {
    const auto& vars = csp.tuples[t].vars;
    charged[*std::max_element(vars.begin(), vars.end())].push_back(
        static_cast<int>(t));
  }

  std::vector<CspLabel> labels(n, 0);
  CspAssignment best;
  best.cost = kInf;
  std::function<void(int, double)> dfs = [&](int v, double partial) {
    if (v == n) {
      if (partial < best.cost) best = {labels, partial};
      return;
    }
    for (CspLabel s : domain[v]) {
      labels[v] = s;
      double cost = partial;
      for (int t : charged[v]) {
        const CspTuple& tuple = csp.tuples[t];
        CspLabel at[2] = {labels[tuple.vars[0]], 0};
        if (tuple.vars.size() > 1) at[1] = labels[tuple.vars[1]];
        cost += TermCost(PredicateValue(csp.family, tuple.predicate, at),
                         tuple.weight);
      }
      if (cost < best.cost) dfs(v + 1, cost);
    }
  };
  dfs(0, 0.0);
  if (std::isinf(best.cost)) {
    throw Error(ErrorCode::kInfeasible, "no finite-cost assignment");
  }
  return best;
}

}  // namespace multicut
