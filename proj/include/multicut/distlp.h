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

#ifndef MULTICUT_DISTLP_H_
#define MULTICUT_DISTLP_H_

#include <span>
#include <string>
#include <vector>

#include "multicut/instance.h"
#include "multicut/lp.h"

namespace multicut {

// Per supply edge (by index), a length in [0,1]; zero on infinite edges.
struct FractionalEdgeSolution {
  std::vector<double> x;
};

double FractionalCost(const SupplyGraph& supply,
                      const FractionalEdgeSolution& solution);

// Compact form of the path relaxation. One length variable per finite edge
// and, for every demand source s, potentials y_s(v) in [0,1] with y_s(s) = 0,
// y_s(head) <= y_s(tail) + x_e along every usable edge direction and
// y_s(t) >= 1 per demand (s,t). Vertices unreachable from s get no
// potential.
struct DistanceLp {
  LinearProgram lp;
  // LP variable of x_e, or -1 for infinite edges.
  std::vector<int> edge_var;
};

// Throws Error(kInfeasible) when a demand is connected by infinite edges.
DistanceLp BuildDistanceLp(const MulticutInstance& instance);

struct DistanceLpSolution {
  double value = 0.0;
  FractionalEdgeSolution x;
};

DistanceLpSolution SolveDistanceLp(const MulticutInstance& instance,
                                   const LpOptions& options = {});

// Lengths of the edges on the solved LP, read back from a primal vector.
FractionalEdgeSolution EdgeLengths(const DistanceLp& dlp,
                                   std::span<const double> primal);

using DistanceMatrix = std::vector<std::vector<double>>;

// Single-source Dijkstra; +inf marks unreachable vertices. Undirected edges
// are usable both ways; infinite edges have length zero.
std::vector<double> ShortestPathsFrom(const SupplyGraph& supply,
                                      std::span<const double> x, int source);
DistanceMatrix ShortestPaths(const SupplyGraph& supply,
                             std::span<const double> x);

// Smallest d(s,t) over demands; +inf without demands.
double MinDemandDistance(const MulticutInstance& instance,
                         std::span<const double> x);

struct CutSolution {
  std::vector<int> edges;  // sorted edge indices
  double cost = 0.0;
};

// Sorts and deduplicates `edges` and sums their weights. Throws
// Error(kInvalidCut) on an infinite edge or an out-of-range index.
CutSolution MakeCut(const SupplyGraph& supply, std::vector<int> edges);

// Throws Error(kInvalidCut) if the cut contains an infinite edge.
bool VerifyCut(const MulticutInstance& instance, const CutSolution& cut);

// Edge ids of the cut, sorted.
std::vector<std::string> CutEdgeIds(const SupplyGraph& supply,
                                    const CutSolution& cut);

inline constexpr int kDefaultEnumerationCap = 24;

// Exhaustive minimum multicut. Among equal-cost cuts the lexicographically
// smallest sorted edge-id list wins. Throws Error(kSizeGuard) beyond
// `max_edges` finite edges and Error(kInfeasible) if no finite cut exists.
CutSolution BruteForceOpt(const MulticutInstance& instance,
                          int max_edges = kDefaultEnumerationCap);

struct GapReport {
  double lp_value = 0.0;
  double opt_value = 0.0;
  CutSolution opt_cut;
  FractionalEdgeSolution x;
  // opt / lp, or 1 when both are zero.
  double ratio = 1.0;
};

GapReport FlowCutGap(const MulticutInstance& instance,
                     int max_edges = kDefaultEnumerationCap,
                     const LpOptions& options = {});

}  // namespace multicut

#endif  // MULTICUT_DISTLP_H_
