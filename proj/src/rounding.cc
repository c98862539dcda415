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

#include "multicut/rounding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kValueTolerance = 1e-9;

std::vector<std::vector<int>> DemandPartners(const MulticutInstance& inst) {
  std::vector<std::vector<int>> partners(inst.supply.num_vertices());
  for (auto [s, t] : inst.demand.edges) partners[s].push_back(t);
  return partners;
}

}  // namespace

D1Matrix ComputeD1(const MulticutInstance& instance, const DistanceMatrix& d) {
  const int n = instance.supply.num_vertices();
  const auto partners = DemandPartners(instance);
  D1Matrix d1(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    if (partners[u].empty()) continue;
    for (int v = 0; v < n; ++v) {
      double nearest = kInf;
      for (int t : partners[u]) nearest = std::min(nearest, d[v][t]);
      d1[u][v] = std::max(0.0, 1.0 - nearest);
    }
  }
  return d1;
}

FractionalEdgeSolution NormalizeLengths(const MulticutInstance& instance,
                                        const FractionalEdgeSolution& x) {
  const SupplyGraph& g = instance.supply;
  if (static_cast<int>(x.x.size()) != g.num_edges()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "length vector does not match the edge count");
  }
  FractionalEdgeSolution out = x;
  for (int e = 0; e < g.num_edges(); ++e) {
    out.x[e] =
        g.edges[e].weight.is_infinite() ? 0.0 : std::clamp(out.x[e], 0.0, 1.0);
  }
  double m = MinDemandDistance(instance, out.x);
  if (m < 1.0 - 1e-6) {
    throw Error(ErrorCode::kInfeasible,
                "lengths leave a demand at distance " + std::to_string(m));
  }
  for (int round = 0; m < 1.0 && round < 64; ++round) {
    const double factor = (1.0 / m) * (1.0 + 4 * 0x1.0p-52 * (round + 1));
    for (double& v : out.x) v = std::min(1.0, v * factor);
    m = MinDemandDistance(instance, out.x);
  }
  if (m < 1.0) {
    throw Error(ErrorCode::kNumericFailure, "could not normalize lengths");
  }
  return out;
}

CutSolution BallCut(const MulticutInstance& instance, const D1Matrix& d1,
                    double theta) {
  const SupplyGraph& g = instance.supply;
  const auto partners = DemandPartners(instance);
  std::vector<char> cut(g.num_edges(), 0);
  std::vector<char> inside(g.num_vertices());
  for (int u = 0; u < g.num_vertices(); ++u) {
    if (partners[u].empty()) continue;  // B_u = V
    for (int v = 0; v < g.num_vertices(); ++v) inside[v] = d1[u][v] <= theta;
    for (int e = 0; e < g.num_edges(); ++e) {
      const SupplyEdge& edge = g.edges[e];
      bool leaves = edge.directed ? inside[edge.tail] && !inside[edge.head]
                                  : inside[edge.tail] != inside[edge.head];
      if (!leaves) continue;
      if (edge.weight.is_infinite()) {
        throw Error(ErrorCode::kInfiniteEdgeCut, "infinite edge '" + edge.id +
                                                     "' leaves the ball of '" +
                                                     g.vertices[u] + "'");
      }
      cut[e] = 1;
    }
  }
  std::vector<int> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (cut[e]) edges.push_back(e);
  }
  return MakeCut(g, std::move(edges));
}

double CutProbability(const MulticutInstance& instance, const D1Matrix& d1,
                      int edge) {
  const SupplyEdge& e = instance.supply.edges[edge];
  std::vector<std::pair<double, double>> intervals;
  auto add = [&](double lo, double hi) {
    hi = std::min(hi, 1.0);
    if (lo < hi) intervals.emplace_back(lo, hi);
  };
  for (size_t u = 0; u < d1.size(); ++u) {
    add(d1[u][e.tail], d1[u][e.head]);
    if (!e.directed) add(d1[u][e.head], d1[u][e.tail]);
  }
  std::sort(intervals.begin(), intervals.end());
  double measure = 0.0;
  double lo = 0.0, hi = 0.0;
  bool open = false;
  for (auto [a, b] : intervals) {
    if (!open || a > hi) {
      if (open) measure += hi - lo;
      lo = a;
      hi = b;
      open = true;
    } else {
      hi = std::max(hi, b);
    }
  }
  if (open) measure += hi - lo;
  return measure;
}

std::vector<double> CutProbabilityProfile(const MulticutInstance& instance,
                                          const D1Matrix& d1) {
  std::vector<double> profile(instance.supply.num_edges());
  for (int e = 0; e < instance.supply.num_edges(); ++e) {
    profile[e] = CutProbability(instance, d1, e);
  }
  return profile;
}

RoundingOutcome DerandomizedRound(const MulticutInstance& instance,
                                  const FractionalEdgeSolution& x) {
  RoundingOutcome out;
  out.x = NormalizeLengths(instance, x);
  const D1Matrix d1 =
      ComputeD1(instance, ShortestPaths(instance.supply, out.x.x));
  std::vector<double> candidates = {0.0};
  for (const auto& row : d1) {
    for (double v : row) {
      if (v > 0.0 && v < 1.0) candidates.push_back(v);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  bool have = false;
  for (double theta : candidates) {
    CutSolution cut = BallCut(instance, d1, theta);
    if (!have || cut.cost < out.cut.cost) {
      out.cut = std::move(cut);
      out.theta = theta;
      have = true;
    }
  }
  out.profile = CutProbabilityProfile(instance, d1);
  return out;
}

RoundingOutcome RandomThetaRound(const MulticutInstance& instance,
                                 const FractionalEdgeSolution& x, Rng& rng) {
  RoundingOutcome out;
  out.x = NormalizeLengths(instance, x);
  const D1Matrix d1 =
      ComputeD1(instance, ShortestPaths(instance.supply, out.x.x));
  out.theta = UniformReal(rng);
  out.cut = BallCut(instance, d1, out.theta);
  out.profile = CutProbabilityProfile(instance, d1);
  return out;
}

std::optional<MatchingExtensionWitness> ExtractMatchingExtension(
    const MulticutInstance& instance, const FractionalEdgeSolution& x, int k) {
  if (k < 1) throw Error(ErrorCode::kParameter, "k must be at least 1");
  const DistanceMatrix d = ShortestPaths(instance.supply, x.x);
  const D1Matrix d1 = ComputeD1(instance, d);
  const auto partners = DemandPartners(instance);
  const int n = instance.supply.num_vertices();
  for (int v = 0; v < n; ++v) {
    std::vector<std::pair<double, int>> values;
    for (int u = 0; u < n; ++u) {
      if (!partners[u].empty() && d1[u][v] > kValueTolerance) {
        values.emplace_back(d1[u][v], u);
      }
    }
    // Decreasing d1, ties by vertex index; keep one source per value.
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::pair<double, int>> distinct;
    for (const auto& p : values) {
      if (distinct.empty() ||
          distinct.back().first - p.first > kValueTolerance) {
        distinct.push_back(p);
      }
    }
    if (static_cast<int>(distinct.size()) < k) continue;
    MatchingExtensionWitness w;
    for (int i = 0; i < k; ++i) {
      const int u = distinct[i].second;
      int best = -1;
      for (int t : partners[u]) {
        if (best < 0 || d[v][t] < d[v][best]) best = t;
      }
      w.s.push_back(u);
      w.t.push_back(best);
    }
    if (IsMatchingExtension(instance.demand, w)) return w;
  }
  return std::nullopt;
}

}  // namespace multicut
