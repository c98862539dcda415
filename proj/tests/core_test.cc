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

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "multicut/demand.h"
#include "multicut/error.h"
#include "multicut/instance.h"
#include "testing.h"

namespace multicut {
namespace {

using ::multicut::testing::CompleteDemand;
using ::multicut::testing::MakeDemand;
using ::multicut::testing::MakeInstance;
using ::multicut::testing::TriangleCastDemand;

bool HasKind(const ValidationReport& report, ViolationKind kind) {
  return std::any_of(report.begin(), report.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

TEST(ValidateInstanceTest, PathInstanceIsClean) {
  MulticutInstance inst = MakeInstance(
      {"s", "m", "t"}, {{"s", "m", Weight(1)}, {"m", "t", Weight(2)}},
      {{"s", "t"}});
  EXPECT_TRUE(ValidateInstance(inst).empty());
  EXPECT_NO_THROW(RequireValid(inst));
}

TEST(ValidateInstanceTest, SelfLoopDemand) {
  MulticutInstance inst = MakeInstance({"s", "t"}, {{"s", "t", Weight(1)}}, {});
  inst.demand.terminals = {0};
  inst.demand.edges = {{0, 0}};
  ValidationReport report = ValidateInstance(inst);
  ASSERT_TRUE(HasKind(report, ViolationKind::kSelfLoopDemand));
  EXPECT_NE(report[0].message.find("self-loop demand"), std::string::npos);
}

TEST(ValidateInstanceTest, UnknownVertex) {
  MulticutInstance inst = MakeInstance({"s", "t"}, {}, {{"s", "t"}});
  inst.supply.edges.push_back({"bad", 0, 7, Weight(1), true});
  ValidationReport report = ValidateInstance(inst);
  ASSERT_TRUE(HasKind(report, ViolationKind::kUnknownVertex));
  EXPECT_THROW(RequireValid(inst), Error);
}

TEST(ValidateInstanceTest, NegativeWeightAndDuplicates) {
  MulticutInstance inst = MakeInstance({"s", "t"}, {{"s", "t", Weight(-1)}},
                                       {{"s", "t"}, {"s", "t"}});
  inst.supply.edges.push_back(inst.supply.edges[0]);
  ValidationReport report = ValidateInstance(inst);
  EXPECT_TRUE(HasKind(report, ViolationKind::kNegativeWeight));
  EXPECT_TRUE(HasKind(report, ViolationKind::kDuplicateEdgeId));
  EXPECT_TRUE(HasKind(report, ViolationKind::kDuplicateDemand));
}

TEST(WeightTest, InfiniteDominatesFinite) {
  EXPECT_GT(Weight::Infinite(), Weight(1e300));
  EXPECT_EQ(Weight::Parse("inf"), Weight::Infinite());
  EXPECT_EQ(Weight::Parse("2.5"), Weight(2.5));
  EXPECT_EQ(Weight(0.1).ToString(), "0.1");
  EXPECT_EQ(Weight::Infinite().ToString(), "inf");
  EXPECT_THROW(Weight::Parse("abc"), Error);
}

TEST(AnalyzeDemandTest, TwoByTwo) {
  // a1=0, a2=1, b1=2, b2=3.
  DemandGraph h = MakeDemand(4, {{0, 2}, {0, 3}, {1, 3}});
  DemandAnalysis a = AnalyzeDemand(h);
  EXPECT_EQ(a.sources, (std::vector<int>{0, 1}));
  EXPECT_EQ(a.sinks, (std::vector<int>{2, 3}));
  EXPECT_EQ(a.y[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(a.y[1], (std::vector<int>{1}));
  EXPECT_EQ(a.z[0], (std::vector<int>{1}));
  EXPECT_TRUE(a.z[1].empty());
}

TEST(AnalyzeDemandTest, SinglePair) {
  DemandAnalysis a = AnalyzeDemand(MakeDemand(2, {{0, 1}}));
  EXPECT_EQ(a.y[0], (std::vector<int>{0}));
  EXPECT_TRUE(a.z[0].empty());
}

TEST(AnalyzeDemandTest, DirectedTriangleIsNotBipartite) {
  try {
    AnalyzeDemand(MakeDemand(3, {{0, 1}, {1, 2}, {2, 0}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotBipartite);
  }
}

TEST(AnalyzeDemandTest, YIsReflexive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int p = 1 + testing::UniformInt(rng, 4);
    int q = 1 + testing::UniformInt(rng, 4);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < q; ++j) {
        if (testing::Uniform01(rng) < 0.5) edges.emplace_back(i, p + j);
      }
    }
    if (edges.empty()) continue;
    DemandAnalysis a = AnalyzeDemand(MakeDemand(p + q, edges));
    for (int i = 0; i < a.p(); ++i) {
      EXPECT_TRUE(std::binary_search(a.y[i].begin(), a.y[i].end(), i));
    }
  }
}

// Independent oracle: all t-subsets of the undirected edge set.
bool HasInducedMatchingOracle(const DemandGraph& h, int t) {
  std::set<std::pair<int, int>> und;
  for (auto [a, b] : h.edges) und.insert({std::min(a, b), std::max(a, b)});
  std::vector<std::pair<int, int>> e(und.begin(), und.end());
  const int m = static_cast<int>(e.size());
  if (m < t) return false;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (std::popcount(mask) != t) continue;
    std::vector<int> chosen;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    bool ok = true;
    for (size_t x = 0; x < chosen.size() && ok; ++x) {
      for (size_t y = x + 1; y < chosen.size() && ok; ++y) {
        auto [a1, b1] = e[chosen[x]];
        auto [a2, b2] = e[chosen[y]];
        for (int u : {a1, b1}) {
          for (int v : {a2, b2}) {
            if (u == v || und.count({std::min(u, v), std::max(u, v)})) {
              ok = false;
            }
          }
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

TEST(FindInducedMatchingTest, TriangleCastIsTwoKTwoFree) {
  for (int k = 1; k <= 4; ++k) {
    EXPECT_FALSE(FindInducedMatching(TriangleCastDemand(k), 2).has_value());
  }
}

TEST(FindInducedMatchingTest, DisjointEdges) {
  auto w = FindInducedMatching(MakeDemand(4, {{0, 1}, {2, 3}}), 2);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(*w, (std::vector<DemandPair>{{0, 1}, {2, 3}}));
}

TEST(FindInducedMatchingTest, SingleEdge) {
  EXPECT_FALSE(FindInducedMatching(MakeDemand(2, {{0, 1}}), 2).has_value());
}

TEST(FindInducedMatchingTest, AgreesWithOracleAndIsPermutationInvariant) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 4 + testing::UniformInt(rng, 4);
    DemandGraph h = testing::RandomDemand(rng, n, 0.15);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DemandGraph g = h;
    for (auto& [a, b] : g.edges) a = perm[a], b = perm[b];
    for (int t = 1; t <= 3; ++t) {
      if (h.edges.size() > 16) continue;
      bool expected = HasInducedMatchingOracle(h, t);
      auto found = FindInducedMatching(h, t);
      EXPECT_EQ(found.has_value(), expected);
      EXPECT_EQ(FindInducedMatching(g, t).has_value(), expected);
      if (found) EXPECT_EQ(static_cast<int>(found->size()), t);
    }
  }
}

TEST(FindInducedMatchingTest, NodeCapThrowsSizeGuard) {
  DemandGraph h = testing::CompleteDemand(8);
  try {
    FindInducedMatching(h, 3, SearchLimits{5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
}

// Independent oracle: all ordered k-tuples of demand edges.
bool HasExtensionOracle(const DemandGraph& h, int k) {
  const int m = static_cast<int>(h.edges.size());
  std::vector<int> idx(k, 0);
  std::function<bool(int)> rec = [&](int depth) -> bool {
    if (depth == k) {
      MatchingExtensionWitness w;
      for (int i : idx) {
        w.s.push_back(h.edges[i].first);
        w.t.push_back(h.edges[i].second);
      }
      std::set<int> ss(w.s.begin(), w.s.end()), ts(w.t.begin(), w.t.end());
      if (static_cast<int>(ss.size()) != k ||
          static_cast<int>(ts.size()) != k) {
        return false;
      }
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j) {
          if (h.HasEdge(w.s[i], w.t[j])) return false;
        }
      }
      return true;
    }
    for (int e = 0; e < m; ++e) {
      idx[depth] = e;
      if (rec(depth + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

TEST(FindMatchingExtensionTest, CompleteThreeHasNoThreeExtension) {
  EXPECT_FALSE(FindMatchingExtension(CompleteDemand(3), 3).has_value());
  EXPECT_TRUE(FindMatchingExtension(CompleteDemand(3), 2).has_value());
}

TEST(FindMatchingExtensionTest, CompleteMinusMatchingHasNoFourExtension) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j && i / 2 != j / 2) edges.emplace_back(i, j);
    }
  }
  DemandGraph h = MakeDemand(6, edges);
  EXPECT_FALSE(FindMatchingExtension(h, 4).has_value());
  EXPECT_EQ(FindMatchingExtension(h, 3).has_value(), HasExtensionOracle(h, 3));
  EXPECT_TRUE(FindMatchingExtension(h, 2).has_value());
}

TEST(FindMatchingExtensionTest, DisjointEdges) {
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) edges.emplace_back(2 * i, 2 * i + 1);
    DemandGraph h = MakeDemand(2 * k, edges);
    auto w = FindMatchingExtension(h, k);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(IsMatchingExtension(h, *w));
    std::set<std::pair<int, int>> got;
    for (int i = 0; i < k; ++i) got.insert({w->s[i], w->t[i]});
    std::set<std::pair<int, int>> want(edges.begin(), edges.end());
    EXPECT_EQ(got, want);
  }
}

TEST(FindMatchingExtensionTest, AgreesWithOracleAndPrefixesStayValid) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + testing::UniformInt(rng, 3);
    DemandGraph h = testing::RandomDemand(rng, n, 0.35);
    for (int k = 1; k <= 3; ++k) {
      auto w = FindMatchingExtension(h, k);
      EXPECT_EQ(w.has_value(), HasExtensionOracle(h, k));
      if (!w) continue;
      for (int prefix = 1; prefix <= k; ++prefix) {
        MatchingExtensionWitness p{{w->s.begin(), w->s.begin() + prefix},
                                   {w->t.begin(), w->t.begin() + prefix}};
        EXPECT_TRUE(IsMatchingExtension(h, p));
      }
    }
  }
}

TEST(DecomposeBipartiteTest, TwoCycle) {
  std::vector<DemandGraph> parts =
      DecomposeBipartite(MakeDemand(2, {{0, 1}, {1, 0}}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].edges, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_EQ(parts[1].edges, (std::vector<std::pair<int, int>>{{1, 0}}));
}

TEST(DecomposeBipartiteTest, SingleEdge) {
  std::vector<DemandGraph> parts = DecomposeBipartite(MakeDemand(2, {{0, 1}}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].edges.size(), 1u);
  EXPECT_TRUE(parts[1].edges.empty());
}

TEST(DecomposeBipartiteTest, RandomUnionAndBipartiteness) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + testing::UniformInt(rng, 7);
    DemandGraph h = testing::RandomDemand(rng, n, 0.4);
    std::vector<DemandGraph> parts = DecomposeBipartite(h);
    int p = 0;
    while ((1 << p) < n) ++p;
    EXPECT_EQ(static_cast<int>(parts.size()), 2 * p);
    std::set<std::pair<int, int>> all;
    for (const DemandGraph& part : parts) {
      EXPECT_EQ(part.terminals, h.terminals);
      EXPECT_NO_THROW(AnalyzeDemand(part));
      all.insert(part.edges.begin(), part.edges.end());
    }
    std::set<std::pair<int, int>> want(h.edges.begin(), h.edges.end());
    EXPECT_EQ(all, want);
  }
}

}  // namespace
}  // namespace multicut
