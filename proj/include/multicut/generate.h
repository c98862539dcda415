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

#ifndef MULTICUT_GENERATE_H_
#define MULTICUT_GENERATE_H_

#include <cstdint>
#include <optional>
#include <string>

#include "multicut/instance.h"

namespace multicut {

enum class DemandShape {
  kRandom,
  kTriangleCast,
  kComplete,
  kDisjointMatching,
  kMatchingRemovedComplete,
};

const char* DemandShapeName(DemandShape shape);
// Throws Error(kParameter) on an unknown name.
DemandShape ParseDemandShape(const std::string& name);

struct GenOptions {
  uint64_t seed = 1;
  int n = 6;
  int k = 2;
  double edge_density = 0.5;
  // Probability that a generated edge is directed.
  double directedness = 0.5;
  DemandShape shape = DemandShape::kRandom;
  // Keep at most this many supply edges; 0 means no limit.
  int max_edges = 0;
  int max_weight = 5;
};

// Vertices "v0".."v{n-1}"; edge ids "e0", "e1", ...; integer weights in
// [1, max_weight]. Each unordered vertex pair becomes an edge with
// probability edge_density. Terminals are a seeded sample of the vertices:
//   random                      k terminals, each ordered pair w.p. 1/2
//   triangle-cast               s_1..s_k, t_1..t_k, (s_i,t_j) iff i <= j
//   complete                    k terminals, every ordered pair
//   disjoint-matching           k pairs (s_i, t_i)
//   matching-removed-complete   k terminals (k even), complete minus the
//                               pairs {2i, 2i+1} in both directions
// Throws Error(kParameter) on bad arguments.
MulticutInstance GenerateInstance(const GenOptions& options);

}  // namespace multicut

#endif  // MULTICUT_GENERATE_H_
