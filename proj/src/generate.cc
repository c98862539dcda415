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

#include "multicut/generate.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"
#include "multicut/random.h"

namespace multicut {

const char* DemandShapeName(DemandShape shape) {
  switch (shape) {
    case DemandShape::kRandom:
      return "random";
    case DemandShape::kTriangleCast:
      return "triangle-cast";
    case DemandShape::kComplete:
      return "complete";
    case DemandShape::kDisjointMatching:
      return "disjoint-matching";
    case DemandShape::kMatchingRemovedComplete:
      return "matching-removed-complete";
  }
  return "random";
}

DemandShape ParseDemandShape(const std::string& name) {
  for (DemandShape s : {DemandShape::kRandom, DemandShape::kTriangleCast,
                        DemandShape::kComplete, DemandShape::kDisjointMatching,
                        DemandShape::kMatchingRemovedComplete}) {
    if (name == DemandShapeName(s)) return s;
  }
  throw Error(ErrorCode::kParameter, "unknown demand shape '" + name + "'");
}

namespace {

int TerminalCount(DemandShape shape, int k) {
  switch (shape) {
    case DemandShape::kTriangleCast:
    case DemandShape::kDisjointMatching:
      return 2 * k;
    default:
      return k;
  }
}

}  // namespace

MulticutInstance GenerateInstance(const GenOptions& o) {
  if (o.k < 1) throw Error(ErrorCode::kParameter, "k must be at least 1");
  if (o.n < 1) throw Error(ErrorCode::kParameter, "n must be at least 1");
  if (o.edge_density < 0 || o.edge_density > 1 || o.directedness < 0 ||
      o.directedness > 1) {
    throw Error(ErrorCode::kParameter,
                "edge density and directedness must lie in [0,1]");
  }
  if (o.max_edges < 0 || o.max_weight < 1) {
    throw Error(ErrorCode::kParameter, "edge cap and weight must be positive");
  }
  const int needed = TerminalCount(o.shape, o.k);
  if (o.shape == DemandShape::kRandom && o.k < 2) {
    throw Error(ErrorCode::kParameter, "random demands need k >= 2");
  }
  if ((o.shape == DemandShape::kComplete ||
       o.shape == DemandShape::kMatchingRemovedComplete) &&
      o.k < 2) {
    throw Error(ErrorCode::kParameter, "this demand shape needs k >= 2");
  }
  if (o.shape == DemandShape::kMatchingRemovedComplete && o.k % 2 != 0) {
    throw Error(ErrorCode::kParameter,
                "matching-removed-complete needs an even k");
  }
  if (o.n < needed) {
    throw Error(ErrorCode::kParameter,
                "n = " + std::to_string(o.n) + " cannot host " +
                    std::to_string(needed) + " terminals");
  }

  Rng rng(o.seed);
  MulticutInstance inst;
  for (int v = 0; v < o.n; ++v) inst.supply.AddVertex("v" + std::to_string(v));

  struct Draft {
    int a, b;
    bool directed;
    int weight;
  };
  std::vector<Draft> drafts;
  for (int a = 0; a < o.n; ++a) {
    for (int b = a + 1; b < o.n; ++b) {
      if (UniformReal(rng) >= o.edge_density) continue;
      Draft d{a, b, UniformReal(rng) < o.directedness, 0};
      if (d.directed && UniformInt(rng, 2) == 1) std::swap(d.a, d.b);
      d.weight = 1 + UniformInt(rng, o.max_weight);
      drafts.push_back(d);
    }
  }
  if (o.max_edges > 0 && static_cast<int>(drafts.size()) > o.max_edges) {
    std::vector<int> keep(drafts.size());
    std::iota(keep.begin(), keep.end(), 0);
    Shuffle(keep, rng);
    keep.resize(o.max_edges);
    std::sort(keep.begin(), keep.end());
    std::vector<Draft> kept;
    for (int i : keep) kept.push_back(drafts[i]);
    drafts = std::move(kept);
  }
  int id = 0;
  for (const Draft& d : drafts) {
    std::string name = "e" + std::to_string(id++);
    if (d.directed) {
      inst.supply.AddDirectedEdge(name, d.a, d.b, Weight(d.weight));
    } else {
      inst.supply.AddUndirectedEdge(name, d.a, d.b, Weight(d.weight));
    }
  }

  std::vector<int> pool(o.n);
  std::iota(pool.begin(), pool.end(), 0);
  Shuffle(pool, rng);
  std::vector<int> term(pool.begin(), pool.begin() + needed);
  DemandGraph& h = inst.demand;
  h.terminals = term;
  const int k = o.k;
  switch (o.shape) {
    case DemandShape::kRandom:
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (i != j && UniformInt(rng, 2) == 1) {
            h.edges.emplace_back(term[i], term[j]);
          }
        }
      }
      if (h.edges.empty()) h.edges.emplace_back(term[0], term[1]);
      break;
    case DemandShape::kTriangleCast:
      for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) h.edges.emplace_back(term[i], term[k + j]);
      }
      break;
    case DemandShape::kComplete:
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (i != j) h.edges.emplace_back(term[i], term[j]);
        }
      }
      break;
    case DemandShape::kDisjointMatching:
      for (int i = 0; i < k; ++i) h.edges.emplace_back(term[i], term[k + i]);
      break;
    case DemandShape::kMatchingRemovedComplete:
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (i != j && i / 2 != j / 2) h.edges.emplace_back(term[i], term[j]);
        }
      }
      break;
  }
  return inst;
}

}  // namespace multicut
