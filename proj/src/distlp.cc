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

#include "multicut/distlp.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
  int to;
  int edge;
};

std::vector<std::vector<Arc>> BuildAdjacency(const SupplyGraph& supply) {
  std::vector<std::vector<Arc>> adj(supply.num_vertices());
  for (int e = 0; e < supply.num_edges(); ++e) {
    const SupplyEdge& edge = supply.edges[e];
    adj[edge.tail].push_back({edge.head, e});
    if (!edge.directed) adj[edge.head].push_back({edge.tail, e});
  }
  return adj;
}

// Vertices reachable from `source` through edges with usable[e] set.
std::vector<char> Reach(const std::vector<std::vector<Arc>>& adj,
                        const std::vector<char>& usable, int source) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack = {source};
  seen[source] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const Arc& a : adj[u]) {
      if (!usable[a.edge] || seen[a.to]) continue;
      seen[a.to] = 1;
      stack.push_back(a.to);
    }
  }
  return seen;
}

std::vector<int> DemandSources(const DemandGraph& demand) {
  std::vector<int> sources;
  for (auto [s, t] : demand.edges) sources.push_back(s);
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  return sources;
}

bool AnyDemandConnected(const MulticutInstance& instance,
                        const std::vector<std::vector<Arc>>& adj,
                        const std::vector<char>& usable) {
  const std::vector<int> sources = DemandSources(instance.demand);
  for (int s : sources) {
    std::vector<char> seen = Reach(adj, usable, s);
    for (auto [a, b] : instance.demand.edges) {
      if (a == s && seen[b]) return true;
    }
  }
  return false;
}

}  // namespace

double FractionalCost(const SupplyGraph& supply,
                      const FractionalEdgeSolution& solution) {
  double cost = 0.0;
  for (int e = 0; e < supply.num_edges(); ++e) {
    const Weight& w = supply.edges[e].weight;
    if (w.is_finite() && solution.x[e] != 0.0)
      cost += w.value() * solution.x[e];
  }
  return cost;
}

DistanceLp BuildDistanceLp(const MulticutInstance& instance) {
  const SupplyGraph& g = instance.supply;
  const auto adj = BuildAdjacency(g);

  std::vector<char> infinite_only(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    infinite_only[e] = g.edges[e].weight.is_infinite();
  }
  std::vector<char> all(g.num_edges(), 1);

  DistanceLp out;
  LinearProgram& lp = out.lp;
  out.edge_var.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    if (edge.weight.is_infinite()) continue;
    out.edge_var[e] =
        lp.AddVariable("x_" + edge.id, 0.0, 1.0, edge.weight.value());
  }

  for (int s : DemandSources(instance.demand)) {
    std::vector<char> hard = Reach(adj, infinite_only, s);
    std::vector<char> reach = Reach(adj, all, s);
    for (auto [a, t] : instance.demand.edges) {
      if (a == s && hard[t]) {
        throw Error(ErrorCode::kInfeasible,
                    "demand (" + g.vertices[s] + ", " + g.vertices[t] +
                        ") is joined by infinite-weight edges");
      }
    }
    std::vector<int> y(g.num_vertices(), -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (!reach[v]) continue;
      double upper = v == s ? 0.0 : 1.0;
      y[v] = lp.AddVariable("y_" + g.vertices[s] + "_" + g.vertices[v], 0.0,
                            upper);
    }
    auto add_arc = [&](int from, int to, int e) {
      if (y[from] < 0 || y[to] < 0) return;
      std::vector<LpTerm> terms = {{y[to], 1.0}, {y[from], -1.0}};
      if (out.edge_var[e] >= 0) terms.push_back({out.edge_var[e], -1.0});
      lp.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0);
    };
    for (int e = 0; e < g.num_edges(); ++e) {
      const SupplyEdge& edge = g.edges[e];
      add_arc(edge.tail, edge.head, e);
      if (!edge.directed) add_arc(edge.head, edge.tail, e);
    }
    for (auto [a, t] : instance.demand.edges) {
      if (a != s || y[t] < 0) continue;
      lp.AddConstraint({{y[t], 1.0}}, Relation::kGreaterEqual, 1.0);
    }
  }
  return out;
}

FractionalEdgeSolution EdgeLengths(const DistanceLp& dlp,
                                   std::span<const double> primal) {
  FractionalEdgeSolution x;
  x.x.assign(dlp.edge_var.size(), 0.0);
  for (size_t e = 0; e < dlp.edge_var.size(); ++e) {
    if (dlp.edge_var[e] >= 0) x.x[e] = primal[dlp.edge_var[e]];
  }
  return x;
}

DistanceLpSolution SolveDistanceLp(const MulticutInstance& instance,
                                   const LpOptions& options) {
  DistanceLp dlp = BuildDistanceLp(instance);
  LpResult result = SolveLp(dlp.lp, options);
  if (!result.optimal()) {
    throw Error(result.status == LpStatus::kNumericFailure
                    ? ErrorCode::kNumericFailure
                    : ErrorCode::kInternal,
                std::string("distance LP ended with status ") +
                    LpStatusName(result.status));
  }
  DistanceLpSolution out;
  out.x = EdgeLengths(dlp, result.primal);
  out.value = FractionalCost(instance.supply, out.x);
  return out;
}

std::vector<double> ShortestPathsFrom(const SupplyGraph& supply,
                                      std::span<const double> x, int source) {
  const auto adj = BuildAdjacency(supply);
  std::vector<double> dist(supply.num_vertices(), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const Arc& a : adj[u]) {
      double len = supply.edges[a.edge].weight.is_infinite() ? 0.0 : x[a.edge];
      double nd = d + len;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  return dist;
}

DistanceMatrix ShortestPaths(const SupplyGraph& supply,
                             std::span<const double> x) {
  DistanceMatrix d;
  d.reserve(supply.num_vertices());
  for (int u = 0; u < supply.num_vertices(); ++u) {
    d.push_back(ShortestPathsFrom(supply, x, u));
  }
  return d;
}

double MinDemandDistance(const MulticutInstance& instance,
                         std::span<const double> x) {
  double best = kInf;
  for (int s : DemandSources(instance.demand)) {
    std::vector<double> d = ShortestPathsFrom(instance.supply, x, s);
    for (auto [a, t] : instance.demand.edges) {
      if (a == s) best = std::min(best, d[t]);
    }
  }
  return best;
}

CutSolution MakeCut(const SupplyGraph& supply, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  CutSolution cut;
  for (int e : edges) {
    if (e < 0 || e >= supply.num_edges()) {
      throw Error(ErrorCode::kInvalidCut, "cut references an unknown edge");
    }
    if (supply.edges[e].weight.is_infinite()) {
      throw Error(ErrorCode::kInvalidCut,
                  "cut contains infinite edge '" + supply.edges[e].id + "'");
    }
    cut.cost += supply.edges[e].weight.value();
  }
  cut.edges = std::move(edges);
  return cut;
}

bool VerifyCut(const MulticutInstance& instance, const CutSolution& cut) {
  const SupplyGraph& g = instance.supply;
  std::vector<char> usable(g.num_edges(), 1);
  for (int e : cut.edges) {
    if (e < 0 || e >= g.num_edges()) {
      throw Error(ErrorCode::kInvalidCut, "cut references an unknown edge");
    }
    if (g.edges[e].weight.is_infinite()) {
      throw Error(ErrorCode::kInvalidCut,
                  "cut contains infinite edge '" + g.edges[e].id + "'");
    }
    usable[e] = 0;
  }
  return !AnyDemandConnected(instance, BuildAdjacency(g), usable);
}

std::vector<std::string> CutEdgeIds(const SupplyGraph& supply,
                                    const CutSolution& cut) {
  std::vector<std::string> ids;
  for (int e : cut.edges) ids.push_back(supply.edges[e].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

CutSolution BruteForceOpt(const MulticutInstance& instance, int max_edges) {
  const SupplyGraph& g = instance.supply;
  const std::vector<int> finite = g.FiniteEdges();
  const int m = static_cast<int>(finite.size());
  if (m > max_edges) {
    throw Error(ErrorCode::kSizeGuard,
                std::to_string(m) +
                    " finite edges exceed the enumeration cap " +
                    std::to_string(max_edges));
  }
  const auto adj = BuildAdjacency(g);
  // usable[e]: edge survives. Undecided finite edges start removed, so a
  // connected demand means every completion of the branch is infeasible.
  std::vector<char> usable(g.num_edges(), 1);
  for (int e : finite) usable[e] = 0;
  if (AnyDemandConnected(instance, adj, usable)) {
    throw Error(ErrorCode::kInfeasible, "no finite cut separates every demand");
  }

  bool have_best = false;
  double best_cost = kInf;
  std::vector<std::string> best_key;
  std::vector<int> best_edges;

  auto consider = [&](double cost) {
    std::vector<int> edges;
    for (int e : finite) {
      if (!usable[e]) edges.push_back(e);
    }
    const double eps = 1e-9 * std::max(1.0, std::fabs(cost));
    if (have_best && cost > best_cost + eps) return;
    CutSolution candidate{edges, cost};
    std::vector<std::string> key = CutEdgeIds(g, candidate);
    if (!have_best || cost < best_cost - eps || key < best_key) {
      have_best = true;
      best_cost = cost;
      best_key = std::move(key);
      best_edges = std::move(edges);
    }
  };

  // Branch on finite edges in order: keep first, then cut.
  std::function<void(int, double)> dfs = [&](int i, double cost) {
    if (have_best && cost > best_cost + 1e-9 * std::max(1.0, best_cost)) {
      return;
    }
    if (i == m) {
      consider(cost);
      return;
    }
    const int e = finite[i];
    usable[e] = 1;
    if (!AnyDemandConnected(instance, adj, usable)) dfs(i + 1, cost);
    usable[e] = 0;
    dfs(i + 1, cost + g.edges[e].weight.value());
  };
  dfs(0, 0.0);
  return MakeCut(g, best_edges);
}

GapReport FlowCutGap(const MulticutInstance& instance, int max_edges,
                     const LpOptions& options) {
  GapReport report;
  report.opt_cut = BruteForceOpt(instance, max_edges);
  report.opt_value = report.opt_cut.cost;
  DistanceLpSolution lp = SolveDistanceLp(instance, options);
  report.lp_value = lp.value;
  report.x = std::move(lp.x);
  if (report.lp_value <= 1e-12) {
    report.ratio = report.opt_value <= 1e-12 ? 1.0 : kInf;
  } else {
    report.ratio = report.opt_value / report.lp_value;
  }
  return report;
}

}  // namespace multicut
