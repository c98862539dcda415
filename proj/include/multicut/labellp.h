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

#ifndef MULTICUT_LABELLP_H_
#define MULTICUT_LABELLP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multicut/distlp.h"
#include "multicut/instance.h"
#include "multicut/lp.h"

namespace multicut {

// A label over k terminals: bit i is set iff the vertex counts as reachable
// from terminal i (declared terminal order).
using Label = uint32_t;

inline bool LabelLeq(Label a, Label b) { return (a & ~b) == 0; }

// Bit string with the first terminal as the first character.
std::string LabelToString(Label label, int k);
// Inverse of LabelToString; throws Error(kParse).
Label ParseLabel(const std::string& text);

enum class TransportMode {
  kDirected,    // pair (a,b) is free iff a <= b
  kUndirected,  // pair (a,b) is free iff a == b
};

inline bool PairCost(Label a, Label b, TransportMode mode) {
  return mode == TransportMode::kDirected ? !LabelLeq(a, b) : a != b;
}

// Row-major joint distribution over label pairs: joint[a * size + b].
struct Transport {
  std::vector<double> joint;
  double cost = 0.0;
};

// True iff the labels carrying positive mass form a chain under <=.
bool IsChainSupported(std::span<const double> distribution);

// Minimum-cost coupling of two distributions over the same label set.
// Chain-supported directed inputs use the greedy zero-cost flow; all other
// directed inputs solve the transport LP. Throws Error(kMarginalMismatch).
Transport TransportLabels(std::span<const double> zu,
                          std::span<const double> zv, TransportMode mode);

struct LabelSolution {
  int k = 0;
  // z_vertex[v][label]; each row has 2^k entries.
  std::vector<std::vector<double>> z_vertex;
  // z_edge[e]: joint of (tail label, head label), 4^k entries.
  std::vector<std::vector<double>> z_edge;
  FractionalEdgeSolution x;
};

inline constexpr int kDefaultLabelKCap = 4;

struct LabelLp {
  LinearProgram lp;
  int k = 0;
  // LP variable per (vertex, label); -1 where the value is fixed to 0.
  std::vector<std::vector<int>> vertex_var;
  // LP variable per (edge, label pair); -1 where fixed to 0.
  std::vector<std::vector<int>> edge_var;
  // LP variable of x_e; -1 on infinite edges.
  std::vector<int> x_var;
};

// Throws Error(kSizeGuard) when the terminal count exceeds `max_k`.
LabelLp BuildLabelLp(const MulticutInstance& instance,
                     int max_k = kDefaultLabelKCap);

LabelSolution ExtractLabelSolution(const MulticutInstance& instance,
                                   const LabelLp& llp,
                                   std::span<const double> primal);

struct LabelLpSolution {
  double value = 0.0;
  LabelSolution solution;
};

LabelLpSolution SolveLabelLp(const MulticutInstance& instance,
                             int max_k = kDefaultLabelKCap,
                             const LpOptions& options = {});

// Direct check of every Label LP constraint family. On failure `reason`
// (when given) names the first violated family.
bool IsLabelLpFeasible(const MulticutInstance& instance,
                       const LabelSolution& solution, double tolerance = 1e-7,
                       std::string* reason = nullptr);

// Chain construction from clamped terminal distances. Throws
// Error(kInfeasible) if some demand has d(s,t) < 1 - 1e-6.
LabelSolution DistLpToLabel(const MulticutInstance& instance,
                            const FractionalEdgeSolution& x);

// Vertex distribution for the chain built from clamped distances
// d[i] = d(s_i, u); ties are broken by terminal index.
std::vector<double> ChainDistribution(std::span<const double> d);

// Returns the edge lengths of `solution` after checking that every demand
// distance is at least 1 - 1e-6; throws Error(kInfeasible) otherwise.
FractionalEdgeSolution LabelToDistLp(const MulticutInstance& instance,
                                     const LabelSolution& solution);

}  // namespace multicut

#endif  // MULTICUT_LABELLP_H_
