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

#include "multicut/uml.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "multicut/random.h"

namespace multicut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int64_t kMisNodeCap = 10'000'000;

// Groups of vertices joined by infinite edges.
std::vector<int> InfiniteComponents(const SupplyGraph& g, int* count) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const SupplyEdge& e : g.edges) {
    if (e.weight.is_infinite()) parent[find(e.tail)] = find(e.head);
  }
  std::vector<int> id(g.num_vertices(), -1), group(g.num_vertices());
  *count = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int r = find(v);
    if (id[r] < 0) id[r] = (*count)++;
    group[v] = id[r];
  }
  return group;
}

}  // namespace

std::vector<VertexSet> EnumerateMis(const DemandGraph& demand,
                                    int64_t max_sets) {
  const int n = demand.num_terminals();
  if (n > 64) {
    throw Error(ErrorCode::kSizeGuard,
                "independent-set enumeration supports at most 64 terminals");
  }
  std::vector<uint64_t> adj(n, 0);
  for (auto [s, t] : demand.edges) {
    int a = demand.TerminalPosition(s), b = demand.TerminalPosition(t);
    if (a < 0 || b < 0 || a == b) continue;
    adj[a] |= uint64_t{1} << b;
    adj[b] |= uint64_t{1} << a;
  }
  std::vector<uint64_t> found;
  int64_t nodes = 0;
  // r: chosen, c: undecided, x: rejected and not yet dominated.
  std::function<void(uint64_t, uint64_t, uint64_t)> rec =
      [&](uint64_t r, uint64_t c, uint64_t x) {
        if (++nodes > kMisNodeCap) {
          throw Error(ErrorCode::kSizeGuard,
                      "independent-set enumeration exceeded its node cap");
        }
        for (uint64_t rest = x; rest; rest &= rest - 1) {
          int v = std::countr_zero(rest);
          if (!(adj[v] & c)) return;  // can never be dominated
        }
        if (c == 0) {
          found.push_back(r);
          if (static_cast<int64_t>(found.size()) > max_sets) {
            throw Error(ErrorCode::kSizeGuard, "more than " +
                                                   std::to_string(max_sets) +
                                                   " maximal independent sets");
          }
          return;
        }
        int best = -1, best_degree = -1;
        for (uint64_t rest = c; rest; rest &= rest - 1) {
          int v = std::countr_zero(rest);
          int degree = std::popcount(adj[v] & c);
          if (degree > best_degree) {
            best = v;
            best_degree = degree;
          }
        }
        const uint64_t bit = uint64_t{1} << best;
        rec(r | bit, c & ~bit & ~adj[best], x & ~adj[best]);
        rec(r, c & ~bit, x | bit);
      };
  const uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  rec(0, all, 0);

  std::vector<VertexSet> sets;
  for (uint64_t mask : found) {
    VertexSet s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(demand.terminals[i]);
    }
    std::sort(s.begin(), s.end());
    sets.push_back(std::move(s));
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

UmlInstance ReduceToUml(const MulticutInstance& instance,
                        std::vector<VertexSet> mis) {
  for (const SupplyEdge& e : instance.supply.edges) {
    if (e.directed) {
      throw Error(ErrorCode::kDirectedInput,
                  "edge '" + e.id +
                      "' is directed; the labeling reduction "
                      "needs an undirected supply graph");
    }
  }
  UmlInstance uml;
  uml.graph = instance.supply;
  uml.labels = std::move(mis);
  const int n = uml.graph.num_vertices();
  const int labels = uml.num_labels();
  uml.allowed.assign(n, std::vector<char>(labels, 1));
  for (int v : instance.demand.terminals) {
    for (int i = 0; i < labels; ++i) {
      const VertexSet& s = uml.labels[i];
      uml.allowed[v][i] = std::binary_search(s.begin(), s.end(), v);
    }
  }
  return uml;
}

FractionalLabeling SolveUmlLp(const UmlInstance& uml,
                              const LpOptions& options) {
  const SupplyGraph& g = uml.graph;
  const int n = g.num_vertices();
  const int labels = uml.num_labels();
  int groups = 0;
  const std::vector<int> group = InfiniteComponents(g, &groups);
  std::vector<std::vector<char>> allowed(groups, std::vector<char>(labels, 1));
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < labels; ++i) {
      if (!uml.allowed[v][i]) allowed[group[v]][i] = 0;
    }
  }

  LinearProgram lp;
  std::vector<std::vector<int>> var(groups, std::vector<int>(labels, -1));
  for (int c = 0; c < groups; ++c) {
    std::vector<LpTerm> row;
    for (int i = 0; i < labels; ++i) {
      if (!allowed[c][i]) continue;
      var[c][i] = lp.AddVariable("", 0.0, 1.0);
      row.push_back({var[c][i], 1.0});
    }
    if (row.empty()) {
      throw Error(ErrorCode::kInfeasible,
                  "a vertex group has no admissible label");
    }
    lp.AddConstraint(std::move(row), Relation::kEqual, 1.0);
  }
  for (const SupplyEdge& e : g.edges) {
    const int a = group[e.tail], b = group[e.head];
    if (e.weight.is_infinite() || a == b) continue;
    for (int i = 0; i < labels; ++i) {
      if (var[a][i] < 0 && var[b][i] < 0) continue;
      int y = lp.AddVariable("", 0.0, kLpInfinity, e.weight.value() / 2);
      for (double sign : {1.0, -1.0}) {
        std::vector<LpTerm> row = {{y, 1.0}};
        if (var[a][i] >= 0) row.push_back({var[a][i], -sign});
        if (var[b][i] >= 0) row.push_back({var[b][i], sign});
        lp.AddConstraint(std::move(row), Relation::kGreaterEqual, 0.0);
      }
    }
  }
  LpResult r = SolveLp(lp, options);
  if (!r.optimal()) {
    throw Error(
        r.status == LpStatus::kInfeasible ? ErrorCode::kInfeasible
                                          : ErrorCode::kNumericFailure,
        std::string("labeling LP ended with status ") + LpStatusName(r.status));
  }
  FractionalLabeling out;
  out.x.assign(n, std::vector<double>(labels, 0.0));
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < labels; ++i) {
      int j = var[group[v]][i];
      if (j >= 0) out.x[v][i] = r.primal[j];
    }
  }
  out.separation.assign(g.num_edges(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    double l1 = 0.0;
    for (int i = 0; i < labels; ++i) {
      l1 += std::fabs(out.x[g.edges[e].tail][i] - out.x[g.edges[e].head][i]);
    }
    out.separation[e] = l1 / 2;
    if (g.edges[e].weight.is_finite()) {
      out.value += g.edges[e].weight.value() * out.separation[e];
    }
  }
  return out;
}

double LabelingCost(const UmlInstance& uml, const IntegralLabeling& labeling) {
  const SupplyGraph& g = uml.graph;
  for (int v = 0; v < g.num_vertices(); ++v) {
    int f = labeling.f[v];
    if (f < 0 || f >= uml.num_labels() || !uml.allowed[v][f]) return kInf;
  }
  double cost = 0.0;
  for (const SupplyEdge& e : g.edges) {
    if (labeling.f[e.tail] != labeling.f[e.head]) cost += e.weight.value();
  }
  return cost;
}

CutSolution LabelingCut(const UmlInstance& uml,
                        const IntegralLabeling& labeling) {
  std::vector<int> edges;
  for (int e = 0; e < uml.graph.num_edges(); ++e) {
    const SupplyEdge& edge = uml.graph.edges[e];
    if (labeling.f[edge.tail] != labeling.f[edge.head]) edges.push_back(e);
  }
  return MakeCut(uml.graph, std::move(edges));
}

IntegralLabeling KtRound(const UmlInstance& uml, const FractionalLabeling& frac,
                         int trials, uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kParameter, "trials must be positive");
  const int n = uml.graph.num_vertices();
  const int labels = uml.num_labels();
  if (labels == 0) throw Error(ErrorCode::kInfeasible, "no labels");
  const int64_t phase_cap = 10'000 + 100LL * labels;
  IntegralLabeling best;
  double best_cost = kInf;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(trial + 1)));
    IntegralLabeling current{std::vector<int>(n, -1)};
    int remaining = n;
    for (int64_t phase = 0; remaining > 0 && phase < phase_cap; ++phase) {
      const int i = UniformInt(rng, labels);
      const double alpha = UniformPositive(rng);
      for (int v = 0; v < n; ++v) {
        if (current.f[v] < 0 && frac.x[v][i] >= alpha) {
          current.f[v] = i;
          --remaining;
        }
      }
    }
    // Only reachable with mass below the sampling resolution.
    for (int v = 0; v < n && remaining > 0; ++v) {
      if (current.f[v] >= 0) continue;
      const auto& row = frac.x[v];
      current.f[v] = static_cast<int>(std::max_element(row.begin(), row.end()) -
                                      row.begin());
    }
    const double cost = LabelingCost(uml, current);
    if (cost < best_cost || best.f.empty()) {
      best_cost = cost;
      best = std::move(current);
    }
  }
  return best;
}

CutSolution SolveTk2(const MulticutInstance& instance, int t,
                     const Tk2Options& options) {
  if (t < 1) throw Error(ErrorCode::kParameter, "t must be at least 1");
  if (auto m = FindInducedMatching(instance.demand, t, options.search)) {
    std::string text;
    for (auto [s, v] : *m) {
      if (!text.empty()) text += ", ";
      text += "{" + instance.supply.vertices[s] + ", " +
              instance.supply.vertices[v] + "}";
    }
    throw NotTk2FreeError("demand graph has an induced matching of size " +
                              std::to_string(t) + ": " + text,
                          *m);
  }
  UmlInstance uml =
      ReduceToUml(instance, EnumerateMis(instance.demand, options.max_mis));
  FractionalLabeling frac = SolveUmlLp(uml);
  IntegralLabeling f = KtRound(uml, frac, options.trials, options.seed);
  return LabelingCut(uml, f);
}

}  // namespace multicut
