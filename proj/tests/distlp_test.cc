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

#include "multicut/distlp.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "multicut/error.h"
#include "multicut/generate.h"
#include "multicut/lp.h"
#include "testing.h"

namespace multicut {
namespace {

using ::multicut::testing::MakeInstance;

constexpr double kInf = std::numeric_limits<double>::infinity();

MulticutInstance PathInstance() {
  return MakeInstance({"s", "a", "t"},
                      {{"s", "a", Weight(1)}, {"a", "t", Weight(2)}},
                      {{"s", "t"}});
}

MulticutInstance TwoWayInstance() {
  return MakeInstance({"s", "m", "t"},
                      {{"s", "m", Weight(1)},
                       {"m", "t", Weight(1)},
                       {"t", "m", Weight(1)},
                       {"m", "s", Weight(1)}},
                      {{"s", "t"}, {"t", "s"}});
}

// Exhaustive oracle: every subset of finite edges, plain reachability.
double SubsetOracle(const MulticutInstance& inst) {
  const std::vector<int> finite = inst.supply.FiniteEdges();
  const int m = static_cast<int>(finite.size());
  double best = kInf;
  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<char> removed(inst.supply.num_edges(), 0);
    double cost = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        removed[finite[i]] = 1;
        cost += inst.supply.edges[finite[i]].weight.value();
      }
    }
    bool ok = true;
    for (auto [s, t] : inst.demand.edges) {
      std::vector<char> seen(inst.supply.num_vertices(), 0);
      seen[s] = 1;
      bool grew = true;
      while (grew) {
        grew = false;
        for (int e = 0; e < inst.supply.num_edges(); ++e) {
          if (removed[e]) continue;
          const SupplyEdge& edge = inst.supply.edges[e];
          if (seen[edge.tail] && !seen[edge.head])
            seen[edge.head] = grew = true;
          if (!edge.directed && seen[edge.head] && !seen[edge.tail]) {
            seen[edge.tail] = grew = true;
          }
        }
      }
      if (seen[t]) ok = false;
    }
    if (ok) best = std::min(best, cost);
  }
  return best;
}

TEST(DistanceLpTest, PathInstance) {
  DistanceLpSolution sol = SolveDistanceLp(PathInstance());
  EXPECT_NEAR(sol.value, 1.0, 1e-9);
}

TEST(DistanceLpTest, TwoWayInstance) {
  EXPECT_NEAR(SolveDistanceLp(TwoWayInstance()).value, 2.0, 1e-9);
}

TEST(DistanceLpTest, NoDemands) {
  MulticutInstance inst = PathInstance();
  inst.demand.edges.clear();
  DistanceLpSolution sol = SolveDistanceLp(inst);
  EXPECT_EQ(sol.value, 0.0);
  for (double x : sol.x.x) EXPECT_EQ(x, 0.0);
}

TEST(DistanceLpTest, InfiniteConnectionIsInfeasible) {
  MulticutInstance inst =
      MakeInstance({"s", "t"}, {{"s", "t", Weight::Infinite()}}, {{"s", "t"}});
  try {
    BuildDistanceLp(inst);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(DistanceLpTest, UndirectedEdgeWorksBothWays) {
  MulticutInstance inst = MakeInstance(
      {"s", "t"}, {{"t", "s", Weight(3), /*directed=*/false}}, {{"s", "t"}});
  EXPECT_NEAR(SolveDistanceLp(inst).value, 3.0, 1e-9);
}

TEST(ShortestPathsTest, Examples) {
  MulticutInstance inst = PathInstance();
  std::vector<double> x = {1.0, 0.0};
  DistanceMatrix d = ShortestPaths(inst.supply, x);
  EXPECT_EQ(d[0][1], 1.0);
  EXPECT_EQ(d[0][2], 1.0);
  EXPECT_EQ(d[1][2], 0.0);
  EXPECT_EQ(d[2][0], kInf);
  std::vector<double> zero = {0.0, 0.0};
  EXPECT_EQ(ShortestPaths(inst.supply, zero)[0][2], 0.0);
}

TEST(VerifyCutTest, Examples) {
  MulticutInstance i1 = PathInstance();
  EXPECT_TRUE(VerifyCut(i1, MakeCut(i1.supply, {0})));
  EXPECT_FALSE(VerifyCut(i1, MakeCut(i1.supply, {})));
  MulticutInstance i2 = TwoWayInstance();
  EXPECT_TRUE(VerifyCut(i2, MakeCut(i2.supply, {0, 2})));
  MulticutInstance inf =
      MakeInstance({"s", "t"}, {{"s", "t", Weight::Infinite()}}, {});
  EXPECT_THROW(VerifyCut(inf, CutSolution{{0}, 0}), Error);
}

TEST(BruteForceOptTest, Examples) {
  CutSolution c1 = BruteForceOpt(PathInstance());
  EXPECT_EQ(c1.cost, 1.0);
  EXPECT_EQ(c1.edges, std::vector<int>{0});
  EXPECT_EQ(BruteForceOpt(TwoWayInstance()).cost, 2.0);
  MulticutInstance none = PathInstance();
  none.demand.edges.clear();
  CutSolution c0 = BruteForceOpt(none);
  EXPECT_EQ(c0.cost, 0.0);
  EXPECT_TRUE(c0.edges.empty());
}

TEST(BruteForceOptTest, TieBreakIsLexicographic) {
  // Two parallel unit paths; either edge of each path works.
  MulticutInstance inst = MakeInstance(
      {"s", "a", "t"}, {{"s", "a", Weight(1)}, {"a", "t", Weight(1)}},
      {{"s", "t"}});
  inst.supply.edges[0].id = "z";
  inst.supply.edges[1].id = "b";
  CutSolution cut = BruteForceOpt(inst);
  EXPECT_EQ(CutEdgeIds(inst.supply, cut), std::vector<std::string>{"b"});
}

TEST(BruteForceOptTest, Guards) {
  GenOptions o;
  o.n = 9;
  o.edge_density = 1.0;
  MulticutInstance big = GenerateInstance(o);
  try {
    BruteForceOpt(big, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
  MulticutInstance stuck = MakeInstance(
      {"s", "t"}, {{"s", "t", Weight::Infinite(), false}}, {{"s", "t"}});
  try {
    BruteForceOpt(stuck);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(FlowCutGapTest, PathInstance) {
  GapReport r = FlowCutGap(PathInstance());
  EXPECT_NEAR(r.ratio, 1.0, 1e-9);
}

TEST(FlowCutGapTest, RandomPropertiesHold) {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 6;
    o.k = 3;
    o.max_edges = 12;
    MulticutInstance inst = GenerateInstance(o);
    GapReport r = FlowCutGap(inst);
    EXPECT_EQ(r.opt_value, SubsetOracle(inst)) << seed;
    EXPECT_TRUE(VerifyCut(inst, r.opt_cut));
    EXPECT_LE(r.lp_value, r.opt_value + 1e-6);
    EXPECT_GE(r.ratio, 1.0 - 1e-9);
    EXPECT_GE(MinDemandDistance(inst, r.x.x), 1.0 - 1e-6);
    for (int e = 0; e < inst.supply.num_edges(); ++e) {
      EXPECT_GE(r.x.x[e], 0.0);
      EXPECT_LE(r.x.x[e], 1.0);
    }
  }
}

TEST(FlowCutGapTest, SinglePairIsExact) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 7;
    o.k = 1;
    o.shape = DemandShape::kDisjointMatching;
    o.max_edges = 14;
    GapReport r = FlowCutGap(GenerateInstance(o));
    EXPECT_NEAR(r.ratio, 1.0, 1e-6) << seed;
  }
}

TEST(FlowCutGapTest, AddingDemandIsMonotone) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 6;
    o.k = 3;
    o.max_edges = 11;
    MulticutInstance inst = GenerateInstance(o);
    GapReport before = FlowCutGap(inst);
    const auto& t = inst.demand.terminals;
    bool added = false;
    for (int a : t) {
      for (int b : t) {
        if (a != b && !added && !inst.demand.HasEdge(a, b)) {
          inst.demand.edges.emplace_back(a, b);
          added = true;
        }
      }
    }
    if (!added) continue;
    GapReport after = FlowCutGap(inst);
    EXPECT_GE(after.lp_value, before.lp_value - 1e-6);
    EXPECT_GE(after.opt_value, before.opt_value);
  }
}

}  // namespace
}  // namespace multicut
