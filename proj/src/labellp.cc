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

#include "multicut/labellp.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

constexpr double kMassTolerance = 1e-9;
constexpr double kResidue = 1e-15;

std::string Bits(Label label, int k) { return LabelToString(label, k); }

void CheckDistribution(std::span<const double> z, const char* which) {
  double sum = 0.0;
  for (double v : z) {
    if (!(v >= -kMassTolerance)) {
      throw Error(ErrorCode::kMarginalMismatch,
                  std::string(which) + " distribution has a negative entry");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > kMassTolerance) {
    throw Error(
        ErrorCode::kMarginalMismatch,
        std::string(which) + " distribution sums to " + std::to_string(sum));
  }
}

// Support labels ordered by set size, i.e. along the chain.
std::vector<Label> ChainOrder(std::span<const double> z) {
  std::vector<Label> support;
  for (Label a = 0; a < z.size(); ++a) {
    if (z[a] > 0.0) support.push_back(a);
  }
  std::sort(support.begin(), support.end(), [](Label a, Label b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return support;
}

// Sends leftover supply to leftover demand in label order.
void CompleteFlow(std::vector<double>& ru, std::vector<double>& rv,
                  std::vector<double>& joint) {
  const size_t size = ru.size();
  size_t b = 0;
  for (size_t a = 0; a < size; ++a) {
    while (ru[a] > kResidue && b < size) {
      if (rv[b] <= kResidue) {
        ++b;
        continue;
      }
      double f = std::min(ru[a], rv[b]);
      joint[a * size + b] += f;
      ru[a] -= f;
      rv[b] -= f;
    }
  }
}

double JointCost(const std::vector<double>& joint, size_t size,
                 TransportMode mode) {
  double cost = 0.0;
  for (size_t a = 0; a < size; ++a) {
    for (size_t b = 0; b < size; ++b) {
      if (PairCost(a, b, mode)) cost += joint[a * size + b];
    }
  }
  return cost;
}

Transport GreedyTransport(std::span<const double> zu,
                          std::span<const double> zv, TransportMode mode) {
  const size_t size = zu.size();
  std::vector<double> ru(zu.begin(), zu.end()), rv(zv.begin(), zv.end());
  Transport t;
  t.joint.assign(size * size, 0.0);
  const std::vector<Label> order_u = ChainOrder(zu);
  const std::vector<Label> order_v = ChainOrder(zv);
  for (Label a : order_u) {
    for (Label b : order_v) {
      if (ru[a] <= kResidue) break;
      if (rv[b] <= kResidue || PairCost(a, b, mode)) continue;
      double f = std::min(ru[a], rv[b]);
      t.joint[a * size + b] += f;
      ru[a] -= f;
      rv[b] -= f;
    }
  }
  CompleteFlow(ru, rv, t.joint);
  t.cost = JointCost(t.joint, size, mode);
  return t;
}

Transport LpTransport(std::span<const double> zu, std::span<const double> zv,
                      TransportMode mode) {
  const size_t size = zu.size();
  LinearProgram lp;
  std::vector<int> var(size * size, -1);
  std::vector<std::vector<LpTerm>> rows_u(size), rows_v(size);
  for (size_t a = 0; a < size; ++a) {
    if (zu[a] <= 0.0) continue;
    for (size_t b = 0; b < size; ++b) {
      if (zv[b] <= 0.0) continue;
      int j = lp.AddVariable("", 0.0, kLpInfinity,
                             PairCost(a, b, mode) ? 1.0 : 0.0);
      var[a * size + b] = j;
      rows_u[a].push_back({j, 1.0});
      rows_v[b].push_back({j, 1.0});
    }
  }
  for (size_t a = 0; a < size; ++a) {
    if (!rows_u[a].empty()) {
      lp.AddConstraint(rows_u[a], Relation::kEqual, zu[a]);
    }
  }
  // The last sink row is implied by the others; dropping it keeps the
  // system consistent under rounding in the two totals.
  size_t last = size;
  for (size_t b = 0; b < size; ++b) {
    if (!rows_v[b].empty()) last = b;
  }
  for (size_t b = 0; b < size; ++b) {
    if (!rows_v[b].empty() && b != last) {
      lp.AddConstraint(rows_v[b], Relation::kEqual, zv[b]);
    }
  }
  LpResult r = SolveLp(lp);
  if (!r.optimal()) {
    throw Error(ErrorCode::kNumericFailure,
                std::string("transport LP ended with status ") +
                    LpStatusName(r.status));
  }
  Transport t;
  t.joint.assign(size * size, 0.0);
  for (size_t i = 0; i < var.size(); ++i) {
    if (var[i] >= 0) t.joint[i] = r.primal[var[i]];
  }
  t.cost = JointCost(t.joint, size, mode);
  return t;
}

int TerminalCount(const MulticutInstance& instance, int max_k) {
  const int k = instance.demand.num_terminals();
  if (k > max_k || k > 16) {
    throw Error(ErrorCode::kSizeGuard, "label LP over " + std::to_string(k) +
                                           " terminals exceeds the cap " +
                                           std::to_string(max_k));
  }
  return k;
}

// forbidden[v][label]: the label LP pins z_{v,label} to zero.
std::vector<std::vector<char>> ForbiddenLabels(const MulticutInstance& inst,
                                               int k) {
  const Label size = Label{1} << k;
  std::vector<std::vector<char>> forbidden(inst.supply.num_vertices(),
                                           std::vector<char>(size, 0));
  const DemandGraph& h = inst.demand;
  for (int i = 0; i < k; ++i) {
    for (Label a = 0; a < size; ++a) {
      if (!(a >> i & 1)) forbidden[h.terminals[i]][a] = 1;
    }
  }
  for (auto [s, t] : h.edges) {
    const int i = h.TerminalPosition(s);
    for (Label a = 0; a < size; ++a) {
      if (a >> i & 1) forbidden[t][a] = 1;
    }
  }
  return forbidden;
}

}  // namespace

std::string LabelToString(Label label, int k) {
  std::string s(k, '0');
  for (int i = 0; i < k; ++i) {
    if (label >> i & 1) s[i] = '1';
  }
  return s;
}

Label ParseLabel(const std::string& text) {
  if (text.size() > 16) throw Error(ErrorCode::kParse, "label too long");
  Label label = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      label |= Label{1} << i;
    } else if (text[i] != '0') {
      throw Error(ErrorCode::kParse,
                  "label '" + text + "' is not a bit string");
    }
  }
  return label;
}

bool IsChainSupported(std::span<const double> distribution) {
  const std::vector<Label> order = ChainOrder(distribution);
  for (size_t i = 1; i < order.size(); ++i) {
    if (!LabelLeq(order[i - 1], order[i])) return false;
  }
  return true;
}

Transport TransportLabels(std::span<const double> zu,
                          std::span<const double> zv, TransportMode mode) {
  if (zu.size() != zv.size() || zu.empty() || !std::has_single_bit(zu.size())) {
    throw Error(ErrorCode::kMarginalMismatch,
                "distributions live on different label sets");
  }
  CheckDistribution(zu, "source");
  CheckDistribution(zv, "target");
  // Undirected: the diagonal is the only free set, so the greedy is exact.
  if (mode == TransportMode::kUndirected ||
      (IsChainSupported(zu) && IsChainSupported(zv))) {
    return GreedyTransport(zu, zv, mode);
  }
  return LpTransport(zu, zv, mode);
}

LabelLp BuildLabelLp(const MulticutInstance& instance, int max_k) {
  const int k = TerminalCount(instance, max_k);
  const SupplyGraph& g = instance.supply;
  const Label size = Label{1} << k;
  const auto forbidden = ForbiddenLabels(instance, k);

  LabelLp out;
  out.k = k;
  LinearProgram& lp = out.lp;
  out.vertex_var.assign(g.num_vertices(), std::vector<int>(size, -1));
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<LpTerm> row;
    for (Label a = 0; a < size; ++a) {
      if (forbidden[v][a]) continue;
      int j = lp.AddVariable("z_" + g.vertices[v] + "_" + Bits(a, k), 0.0, 1.0);
      out.vertex_var[v][a] = j;
      row.push_back({j, 1.0});
    }
    lp.AddConstraint(std::move(row), Relation::kEqual, 1.0,
                     "sum_" + g.vertices[v]);
  }

  out.edge_var.assign(g.num_edges(), std::vector<int>(size * size, -1));
  out.x_var.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    const TransportMode mode =
        edge.directed ? TransportMode::kDirected : TransportMode::kUndirected;
    const bool infinite = edge.weight.is_infinite();
    std::vector<std::vector<LpTerm>> out_rows(size), in_rows(size);
    std::vector<LpTerm> cut_row;
    for (Label a = 0; a < size; ++a) {
      if (out.vertex_var[edge.tail][a] < 0) continue;
      for (Label b = 0; b < size; ++b) {
        if (out.vertex_var[edge.head][b] < 0) continue;
        const bool cut = PairCost(a, b, mode);
        if (infinite && cut) continue;
        int j = lp.AddVariable(
            "z_" + edge.id + "_" + Bits(a, k) + "_" + Bits(b, k), 0.0, 1.0);
        out.edge_var[e][a * size + b] = j;
        out_rows[a].push_back({j, 1.0});
        in_rows[b].push_back({j, 1.0});
        if (cut) cut_row.push_back({j, 1.0});
      }
    }
    for (Label a = 0; a < size; ++a) {
      if (out.vertex_var[edge.tail][a] < 0) continue;
      out_rows[a].push_back({out.vertex_var[edge.tail][a], -1.0});
      lp.AddConstraint(std::move(out_rows[a]), Relation::kEqual, 0.0);
    }
    for (Label b = 0; b < size; ++b) {
      if (out.vertex_var[edge.head][b] < 0) continue;
      in_rows[b].push_back({out.vertex_var[edge.head][b], -1.0});
      lp.AddConstraint(std::move(in_rows[b]), Relation::kEqual, 0.0);
    }
    if (!infinite) {
      int x = lp.AddVariable("x_" + edge.id, 0.0, 1.0, edge.weight.value());
      out.x_var[e] = x;
      cut_row.push_back({x, -1.0});
      lp.AddConstraint(std::move(cut_row), Relation::kEqual, 0.0,
                       "cut_" + edge.id);
    }
  }
  return out;
}

LabelSolution ExtractLabelSolution(const MulticutInstance& instance,
                                   const LabelLp& llp,
                                   std::span<const double> primal) {
  const SupplyGraph& g = instance.supply;
  const Label size = Label{1} << llp.k;
  LabelSolution sol;
  sol.k = llp.k;
  sol.z_vertex.assign(g.num_vertices(), std::vector<double>(size, 0.0));
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (Label a = 0; a < size; ++a) {
      int j = llp.vertex_var[v][a];
      if (j >= 0) sol.z_vertex[v][a] = primal[j];
    }
  }
  sol.z_edge.assign(g.num_edges(), std::vector<double>(size * size, 0.0));
  sol.x.x.assign(g.num_edges(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    for (size_t p = 0; p < size * size; ++p) {
      int j = llp.edge_var[e][p];
      if (j >= 0) sol.z_edge[e][p] = primal[j];
    }
    if (llp.x_var[e] >= 0) sol.x.x[e] = primal[llp.x_var[e]];
  }
  return sol;
}

LabelLpSolution SolveLabelLp(const MulticutInstance& instance, int max_k,
                             const LpOptions& options) {
  LabelLp llp = BuildLabelLp(instance, max_k);
  LpResult r = SolveLp(llp.lp, options);
  if (r.status == LpStatus::kInfeasible) {
    throw Error(ErrorCode::kInfeasible, "label LP is infeasible");
  }
  if (!r.optimal()) {
    throw Error(
        ErrorCode::kNumericFailure,
        std::string("label LP ended with status ") + LpStatusName(r.status));
  }
  LabelLpSolution out;
  out.solution = ExtractLabelSolution(instance, llp, r.primal);
  out.value = FractionalCost(instance.supply, out.solution.x);
  return out;
}

bool IsLabelLpFeasible(const MulticutInstance& instance,
                       const LabelSolution& sol, double tol,
                       std::string* reason) {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return false;
  };
  const SupplyGraph& g = instance.supply;
  const int k = sol.k;
  if (k != instance.demand.num_terminals()) return fail("label width");
  const Label size = Label{1} << k;
  if (static_cast<int>(sol.z_vertex.size()) != g.num_vertices() ||
      static_cast<int>(sol.z_edge.size()) != g.num_edges() ||
      static_cast<int>(sol.x.x.size()) != g.num_edges()) {
    return fail("dimensions");
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (sol.z_vertex[v].size() != size) return fail("dimensions");
    double sum = 0.0;
    for (double z : sol.z_vertex[v]) {
      if (z < -tol || z > 1 + tol) return fail("vertex bounds");
      sum += z;
    }
    if (std::fabs(sum - 1.0) > tol) {
      return fail("vertex distribution of " + g.vertices[v]);
    }
  }
  const auto forbidden = ForbiddenLabels(instance, k);
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (Label a = 0; a < size; ++a) {
      if (forbidden[v][a] && std::fabs(sol.z_vertex[v][a]) > tol) {
        return fail("terminal or demand label at " + g.vertices[v]);
      }
    }
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    const std::vector<double>& joint = sol.z_edge[e];
    if (joint.size() != size * size) return fail("dimensions");
    const TransportMode mode =
        edge.directed ? TransportMode::kDirected : TransportMode::kUndirected;
    double cut = 0.0;
    for (Label a = 0; a < size; ++a) {
      double row = 0.0, col = 0.0;
      for (Label b = 0; b < size; ++b) {
        double z = joint[a * size + b];
        if (z < -tol || z > 1 + tol) return fail("edge bounds");
        row += z;
        col += joint[b * size + a];
        if (PairCost(a, b, mode)) cut += z;
      }
      if (std::fabs(row - sol.z_vertex[edge.tail][a]) > tol ||
          std::fabs(col - sol.z_vertex[edge.head][a]) > tol) {
        return fail("marginals of edge " + edge.id);
      }
    }
    const double x = sol.x.x[e];
    if (x < -tol || x > 1 + tol) return fail("x bounds on " + edge.id);
    if (edge.weight.is_infinite() && std::fabs(x) > tol) {
      return fail("infinite edge " + edge.id + " is cut");
    }
    if (std::fabs(cut - x) > tol) return fail("cut mass of edge " + edge.id);
  }
  return true;
}

std::vector<double> ChainDistribution(std::span<const double> d) {
  const int k = static_cast<int>(d.size());
  std::vector<double> z(size_t{1} << k, 0.0);
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return d[a] < d[b]; });
  if (k == 0) {
    z[0] = 1.0;
    return z;
  }
  Label set = 0;
  z[set] += d[order[0]];
  for (int i = 1; i < k; ++i) {
    set |= Label{1} << order[i - 1];
    z[set] += d[order[i]] - d[order[i - 1]];
  }
  set |= Label{1} << order[k - 1];
  z[set] += 1.0 - d[order[k - 1]];
  return z;
}

LabelSolution DistLpToLabel(const MulticutInstance& instance,
                            const FractionalEdgeSolution& x) {
  const SupplyGraph& g = instance.supply;
  const DemandGraph& h = instance.demand;
  const int k = h.num_terminals();
  if (k > 16) throw Error(ErrorCode::kSizeGuard, "too many terminals");
  std::vector<std::vector<double>> dist(k);
  for (int i = 0; i < k; ++i) {
    dist[i] = ShortestPathsFrom(g, x.x, h.terminals[i]);
    for (double& d : dist[i]) d = std::min(d, 1.0);
  }
  for (auto [s, t] : h.edges) {
    double& d = dist[h.TerminalPosition(s)][t];
    if (d < 1.0 - 1e-6) {
      throw Error(ErrorCode::kInfeasible,
                  "demand (" + g.vertices[s] + ", " + g.vertices[t] +
                      ") has distance " + std::to_string(d));
    }
    d = 1.0;
  }

  LabelSolution sol;
  sol.k = k;
  sol.z_vertex.resize(g.num_vertices());
  std::vector<double> du(k);
  for (int u = 0; u < g.num_vertices(); ++u) {
    for (int i = 0; i < k; ++i) du[i] = dist[i][u];
    sol.z_vertex[u] = ChainDistribution(du);
  }
  sol.z_edge.resize(g.num_edges());
  sol.x.x.assign(g.num_edges(), 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const SupplyEdge& edge = g.edges[e];
    Transport t = TransportLabels(
        sol.z_vertex[edge.tail], sol.z_vertex[edge.head],
        edge.directed ? TransportMode::kDirected : TransportMode::kUndirected);
    sol.z_edge[e] = std::move(t.joint);
    if (edge.weight.is_finite()) sol.x.x[e] = std::clamp(t.cost, 0.0, 1.0);
  }
  return sol;
}

FractionalEdgeSolution LabelToDistLp(const MulticutInstance& instance,
                                     const LabelSolution& solution) {
  FractionalEdgeSolution x = solution.x;
  for (int e = 0; e < instance.supply.num_edges(); ++e) {
    if (instance.supply.edges[e].weight.is_infinite()) x.x[e] = 0.0;
  }
  const double d = MinDemandDistance(instance, x.x);
  if (d < 1.0 - 1e-6) {
    throw Error(
        ErrorCode::kInfeasible,
        "label solution leaves a demand at distance " + std::to_string(d));
  }
  return x;
}

}  // namespace multicut
