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

#include "multicut/instance.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "multicut/error.h"

namespace multicut {

int SupplyGraph::AddVertex(std::string name) {
  vertices.push_back(std::move(name));
  return num_vertices() - 1;
}

int SupplyGraph::AddDirectedEdge(std::string id, int tail, int head,
                                 Weight weight) {
  edges.push_back({std::move(id), tail, head, weight, true});
  return num_edges() - 1;
}

int SupplyGraph::AddUndirectedEdge(std::string id, int a, int b,
                                   Weight weight) {
  edges.push_back({std::move(id), a, b, weight, false});
  return num_edges() - 1;
}

std::optional<int> SupplyGraph::FindVertex(const std::string& name) const {
  auto it = std::find(vertices.begin(), vertices.end(), name);
  if (it == vertices.end()) return std::nullopt;
  return static_cast<int>(it - vertices.begin());
}

std::optional<int> SupplyGraph::FindEdge(const std::string& id) const {
  for (int e = 0; e < num_edges(); ++e) {
    if (edges[e].id == id) return e;
  }
  return std::nullopt;
}

std::vector<int> SupplyGraph::FiniteEdges() const {
  std::vector<int> result;
  for (int e = 0; e < num_edges(); ++e) {
    if (edges[e].weight.is_finite()) result.push_back(e);
  }
  return result;
}

bool SupplyGraph::HasUndirectedEdges() const {
  return std::any_of(edges.begin(), edges.end(),
                     [](const SupplyEdge& e) { return !e.directed; });
}

DemandGraph DemandGraph::FromEdges(std::vector<std::pair<int, int>> edges) {
  DemandGraph demand;
  for (const auto& [s, t] : edges) {
    for (int v : {s, t}) {
      if (std::find(demand.terminals.begin(), demand.terminals.end(), v) ==
          demand.terminals.end()) {
        demand.terminals.push_back(v);
      }
    }
  }
  demand.edges = std::move(edges);
  return demand;
}

int DemandGraph::TerminalPosition(int vertex) const {
  auto it = std::find(terminals.begin(), terminals.end(), vertex);
  return it == terminals.end() ? -1 : static_cast<int>(it - terminals.begin());
}

bool DemandGraph::HasEdge(int source, int sink) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(source, sink)) !=
         edges.end();
}

ValidationReport ValidateInstance(const MulticutInstance& instance) {
  ValidationReport report;
  const SupplyGraph& g = instance.supply;
  const int n = g.num_vertices();
  auto known = [n](int v) { return v >= 0 && v < n; };

  std::set<std::string> names;
  for (const std::string& name : g.vertices) {
    if (!names.insert(name).second) {
      report.push_back(
          {ViolationKind::kDuplicateVertex, "duplicate vertex '" + name + "'"});
    }
  }
  std::set<std::string> ids;
  for (const SupplyEdge& e : g.edges) {
    if (!ids.insert(e.id).second) {
      report.push_back({ViolationKind::kDuplicateEdgeId,
                        "duplicate edge id '" + e.id + "'"});
    }
    if (!known(e.tail) || !known(e.head)) {
      report.push_back({ViolationKind::kUnknownVertex,
                        "unknown vertex on edge '" + e.id + "'"});
    }
    if (e.weight.is_finite() && !(e.weight.value() >= 0.0)) {
      report.push_back({ViolationKind::kNegativeWeight,
                        "negative weight on edge '" + e.id + "'"});
    }
  }

  const DemandGraph& h = instance.demand;
  std::set<int> terminal_set;
  for (int v : h.terminals) {
    if (!known(v)) {
      report.push_back(
          {ViolationKind::kUnknownVertex, "unknown vertex in terminal list"});
    } else if (!terminal_set.insert(v).second) {
      report.push_back({ViolationKind::kDuplicateTerminal,
                        "duplicate terminal '" + g.vertices[v] + "'"});
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& [s, t] : h.edges) {
    if (!known(s) || !known(t)) {
      report.push_back(
          {ViolationKind::kUnknownVertex, "unknown vertex in demand"});
      continue;
    }
    if (s == t) {
      report.push_back({ViolationKind::kSelfLoopDemand,
                        "self-loop demand at '" + g.vertices[s] + "'"});
    }
    if (!pairs.insert({s, t}).second) {
      report.push_back(
          {ViolationKind::kDuplicateDemand,
           "duplicate demand (" + g.vertices[s] + ", " + g.vertices[t] + ")"});
    }
    if (!terminal_set.count(s) || !terminal_set.count(t)) {
      report.push_back({ViolationKind::kDemandEndpointNotTerminal,
                        "demand endpoint is not a declared terminal"});
    }
  }
  return report;
}

void RequireValid(const MulticutInstance& instance) {
  ValidationReport report = ValidateInstance(instance);
  if (report.empty()) return;
  std::string message = "invalid instance: " + report.front().message;
  if (report.size() > 1) {
    message += " (+" + std::to_string(report.size() - 1) + " more)";
  }
  throw Error(ErrorCode::kValidation, message);
}

}  // namespace multicut
