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

#include "multicut/demand.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {
namespace {

bool IsSubset(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

class NodeCounter {
 public:
  explicit NodeCounter(const SearchLimits& limits) : cap_(limits.max_nodes) {}
  void Tick() {
    if (++count_ > cap_) {
      throw Error(ErrorCode::kSizeGuard, "witness search exceeded " +
                                             std::to_string(cap_) +
                                             " partial assignments");
    }
  }

 private:
  int64_t cap_;
  int64_t count_ = 0;
};

}  // namespace

DemandAnalysis AnalyzeDemand(const DemandGraph& demand) {
  std::set<int> tails;
  std::set<int> heads;
  for (const auto& [s, t] : demand.edges) {
    tails.insert(s);
    heads.insert(t);
  }
  for (int v : tails) {
    if (heads.count(v)) {
      throw Error(ErrorCode::kNotBipartite,
                  "demand graph has a terminal that is both a source and a "
                  "sink; no S->T orientation exists");
    }
  }

  DemandAnalysis analysis;
  for (int v : demand.terminals) {
    if (tails.count(v)) analysis.sources.push_back(v);
    if (heads.count(v)) analysis.sinks.push_back(v);
  }
  // Endpoints missing from the terminal list still participate.
  for (int v : tails) {
    if (std::find(analysis.sources.begin(), analysis.sources.end(), v) ==
        analysis.sources.end()) {
      analysis.sources.push_back(v);
    }
  }
  for (int v : heads) {
    if (std::find(analysis.sinks.begin(), analysis.sinks.end(), v) ==
        analysis.sinks.end()) {
      analysis.sinks.push_back(v);
    }
  }

  const int p = analysis.p();
  const int q = analysis.q();
  auto sink_position = [&](int v) {
    return static_cast<int>(
        std::find(analysis.sinks.begin(), analysis.sinks.end(), v) -
        analysis.sinks.begin());
  };
  analysis.out_neighborhoods.assign(p, {});
  for (int i = 0; i < p; ++i) {
    for (const auto& [s, t] : demand.edges) {
      if (s == analysis.sources[i]) {
        analysis.out_neighborhoods[i].push_back(sink_position(t));
      }
    }
    std::sort(analysis.out_neighborhoods[i].begin(),
              analysis.out_neighborhoods[i].end());
  }
  analysis.y.assign(p, {});
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (IsSubset(analysis.out_neighborhoods[j],
                   analysis.out_neighborhoods[i])) {
        analysis.y[i].push_back(j);
      }
    }
  }
  analysis.z.assign(q, {});
  for (int j = 0; j < q; ++j) {
    for (int i = 0; i < p; ++i) {
      if (!std::binary_search(analysis.out_neighborhoods[i].begin(),
                              analysis.out_neighborhoods[i].end(), j)) {
        analysis.z[j].push_back(i);
      }
    }
  }
  return analysis;
}

std::optional<std::vector<DemandPair>> FindInducedMatching(
    const DemandGraph& demand, int t, const SearchLimits& limits) {
  if (t < 1) throw Error(ErrorCode::kParameter, "matching size must be >= 1");

  // Undirected view: one representative per unordered pair, kept in
  // lexicographic order of (min endpoint, max endpoint).
  std::set<std::pair<int, int>> adjacent;
  std::vector<std::pair<std::pair<int, int>, DemandPair>> edges;
  for (const DemandPair& e : demand.edges) {
    std::pair<int, int> key = std::minmax(e.first, e.second);
    if (adjacent.insert(key).second) edges.push_back({key, e});
  }
  std::sort(edges.begin(), edges.end());
  auto linked = [&](int a, int b) {
    return adjacent.count(std::minmax(a, b)) > 0;
  };

  NodeCounter counter(limits);
  std::vector<int> chosen;
  auto compatible = [&](int candidate) {
    auto [a, b] = edges[candidate].first;
    for (int c : chosen) {
      auto [x, y] = edges[c].first;
      if (a == x || a == y || b == x || b == y) return false;
      if (linked(a, x) || linked(a, y) || linked(b, x) || linked(b, y)) {
        return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, int next) -> bool {
    if (static_cast<int>(chosen.size()) == t) return true;
    const int remaining = t - static_cast<int>(chosen.size());
    for (int e = next; e + remaining <= static_cast<int>(edges.size()); ++e) {
      counter.Tick();
      if (!compatible(e)) continue;
      chosen.push_back(e);
      if (self(self, e + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::vector<DemandPair> witness;
  for (int c : chosen) witness.push_back(edges[c].second);
  return witness;
}

bool IsMatchingExtension(const DemandGraph& demand,
                         const MatchingExtensionWitness& witness) {
  const int k = witness.size();
  if (static_cast<int>(witness.t.size()) != k) return false;
  std::set<int> s_set(witness.s.begin(), witness.s.end());
  std::set<int> t_set(witness.t.begin(), witness.t.end());
  if (static_cast<int>(s_set.size()) != k ||
      static_cast<int>(t_set.size()) != k) {
    return false;
  }
  for (int i = 0; i < k; ++i) {
    if (!demand.HasEdge(witness.s[i], witness.t[i])) return false;
    for (int j = 0; j < i; ++j) {
      if (demand.HasEdge(witness.s[i], witness.t[j])) return false;
    }
  }
  return true;
}

std::optional<MatchingExtensionWitness> FindMatchingExtension(
    const DemandGraph& demand, int k, const SearchLimits& limits) {
  if (k < 1) throw Error(ErrorCode::kParameter, "extension size must be >= 1");
  std::set<DemandPair> edge_set(demand.edges.begin(), demand.edges.end());
  std::vector<DemandPair> edges(edge_set.begin(), edge_set.end());

  NodeCounter counter(limits);
  MatchingExtensionWitness current;
  auto search = [&](auto&& self) -> bool {
    const int depth = current.size();
    if (depth == k) return true;
    for (const auto& [s, t] : edges) {
      counter.Tick();
      bool ok = true;
      for (int j = 0; j < depth && ok; ++j) {
        if (current.s[j] == s || current.t[j] == t) ok = false;
        // Row `depth` is below every earlier row: (s, t_j) must be absent.
        if (edge_set.count({s, current.t[j]})) ok = false;
      }
      if (!ok) continue;
      current.s.push_back(s);
      current.t.push_back(t);
      if (self(self)) return true;
      current.s.pop_back();
      current.t.pop_back();
    }
    return false;
  };
  if (!search(search)) return std::nullopt;
  return current;
}

std::vector<DemandGraph> DecomposeBipartite(const DemandGraph& demand) {
  const int k = demand.num_terminals();
  int p = 0;
  while ((1 << p) < k) ++p;

  std::vector<DemandGraph> parts(2 * p);
  for (DemandGraph& part : parts) part.terminals = demand.terminals;
  for (const auto& [s, t] : demand.edges) {
    const int code_s = demand.TerminalPosition(s);
    const int code_t = demand.TerminalPosition(t);
    if (code_s < 0 || code_t < 0) {
      throw Error(ErrorCode::kValidation,
                  "demand endpoint missing from terminal list");
    }
    for (int j = 0; j < p; ++j) {
      const int bit_s = (code_s >> j) & 1;
      const int bit_t = (code_t >> j) & 1;
      if (bit_s == 0 && bit_t == 1) parts[2 * j].edges.push_back({s, t});
      if (bit_s == 1 && bit_t == 0) parts[2 * j + 1].edges.push_back({s, t});
    }
  }
  return parts;
}

}  // namespace multicut
