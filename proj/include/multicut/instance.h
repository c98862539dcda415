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

#ifndef MULTICUT_INSTANCE_H_
#define MULTICUT_INSTANCE_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multicut/weight.h"

namespace multicut {

// Supply edge. For undirected edges `tail`/`head` are just the two endpoints
// in declaration order.
struct SupplyEdge {
  std::string id;
  int tail = -1;
  int head = -1;
  Weight weight;
  bool directed = true;
};

// Weighted supply graph G. Vertices are referenced by index everywhere;
// names exist for documents and diagnostics.
struct SupplyGraph {
  std::vector<std::string> vertices;
  std::vector<SupplyEdge> edges;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  int AddVertex(std::string name);
  int AddDirectedEdge(std::string id, int tail, int head, Weight weight);
  int AddUndirectedEdge(std::string id, int a, int b, Weight weight);

  std::optional<int> FindVertex(const std::string& name) const;
  std::optional<int> FindEdge(const std::string& id) const;

  // Indices of the finite-weight edges, in edge order.
  std::vector<int> FiniteEdges() const;
  bool HasUndirectedEdges() const;
};

// Directed demand graph H over a subset of the supply vertices.
struct DemandGraph {
  // Declared terminal order; label bit i refers to terminals[i].
  std::vector<int> terminals;
  std::vector<std::pair<int, int>> edges;

  // Terminals are the edge endpoints in first-appearance order.
  static DemandGraph FromEdges(std::vector<std::pair<int, int>> edges);

  int num_terminals() const { return static_cast<int>(terminals.size()); }
  // Position of `vertex` in `terminals`, or -1.
  int TerminalPosition(int vertex) const;
  bool HasEdge(int source, int sink) const;
};

struct MulticutInstance {
  SupplyGraph supply;
  DemandGraph demand;
};

enum class ViolationKind {
  kUnknownVertex,
  kDuplicateVertex,
  kDuplicateEdgeId,
  kNegativeWeight,
  kSelfLoopDemand,
  kDuplicateDemand,
  kDemandEndpointNotTerminal,
  kDuplicateTerminal,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

// Lists every broken type invariant; empty iff the instance is well formed.
ValidationReport ValidateInstance(const MulticutInstance& instance);

// Throws Error(kValidation) carrying the first violations when the report is
// not empty.
void RequireValid(const MulticutInstance& instance);

}  // namespace multicut

#endif  // MULTICUT_INSTANCE_H_
