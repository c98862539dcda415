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

#ifndef MULTICUT_DEMAND_H_
#define MULTICUT_DEMAND_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "multicut/instance.h"

namespace multicut {

// Structure of a bipartite demand graph whose edges all run from the source
// side S = {a_1..a_p} to the sink side T = {b_1..b_q}. Positions are 0-based:
// source i is sources[i], sink j is sinks[j]. Isolated terminals belong to
// neither side.
struct DemandAnalysis {
  std::vector<int> sources;
  std::vector<int> sinks;
  // Per source, the sorted sink positions it must be separated from.
  std::vector<std::vector<int>> out_neighborhoods;
  // y[i] = { j : N+(a_j) is a subset of N+(a_i) }.
  std::vector<std::vector<int>> y;
  // z[j] = { i : (a_i, b_j) is not a demand }.
  std::vector<std::vector<int>> z;

  int p() const { return static_cast<int>(sources.size()); }
  int q() const { return static_cast<int>(sinks.size()); }
};

// Throws Error(kNotBipartite) when some terminal is both a demand source and
// a demand sink.
DemandAnalysis AnalyzeDemand(const DemandGraph& demand);

struct SearchLimits {
  int64_t max_nodes = 10'000'000;
};

using DemandPair = std::pair<int, int>;

// Induced matching of size t in H viewed as undirected: t pairwise
// vertex-disjoint demand edges with no demand edge between endpoints of two
// different chosen edges. Exhaustive; throws Error(kSizeGuard) past the node
// cap. Returned pairs keep their demand orientation.
std::optional<std::vector<DemandPair>> FindInducedMatching(
    const DemandGraph& demand, int t, const SearchLimits& limits = {});

struct MatchingExtensionWitness {
  std::vector<int> s;
  std::vector<int> t;

  int size() const { return static_cast<int>(s.size()); }
};

// True iff s and t are each duplicate free, (s_i, t_i) is a demand for all i,
// and (s_i, t_j) is not a demand whenever i > j.
bool IsMatchingExtension(const DemandGraph& demand,
                         const MatchingExtensionWitness& witness);

std::optional<MatchingExtensionWitness> FindMatchingExtension(
    const DemandGraph& demand, int k, const SearchLimits& limits = {});

// Splits H into 2p directed bipartite pieces, where 2^p is the terminal count
// rounded up to a power of two. Terminal i is identified with the bit vector
// of i; piece 2j-1 (1-based) keeps edges from bit j = 0 to bit j = 1 and piece
// 2j the reverse. Every piece keeps the full terminal list.
std::vector<DemandGraph> DecomposeBipartite(const DemandGraph& demand);

}  // namespace multicut

#endif  // MULTICUT_DEMAND_H_
