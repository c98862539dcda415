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

#include "multicut/uml.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "multicut/distlp.h"
#include "multicut/generate.h"
#include "testing.h"

namespace multicut {
namespace {

using testing::EdgeSpec;
using testing::MakeDemand;
using testing::MakeInstance;

// Every subset of the terminals, kept when independent and maximal.
std::vector<VertexSet> MisOracle(const DemandGraph& h) {
  const int n = h.num_terminals();
  auto adjacent = [&](int a, int b) {
    return h.HasEdge(h.terminals[a], h.terminals[b]) ||
           h.HasEdge(h.terminals[b], h.terminals[a]);
  };
  std::vector<VertexSet> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      for (int b = a + 1; b < n && ok; ++b) {
        if ((mask >> a & 1) && (mask >> b & 1) && adjacent(a, b)) ok = false;
      }
    }
    for (int a = 0; a < n && ok; ++a) {
      if (mask >> a & 1) continue;
      bool blocked = false;
      for (int b = 0; b < n; ++b) {
        if ((mask >> b & 1) && adjacent(a, b)) blocked = true;
      }
      if (!blocked) ok = false;
    }
    if (!ok) continue;
    VertexSet s;
    for (int a = 0; a < n; ++a) {
      if (mask >> a & 1) s.push_back(h.terminals[a]);
    }
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cheapest labeling over every assignment of labels to vertices.
double LabelingOracle(const UmlInstance& uml) {
  const int n = uml.graph.num_vertices();
  const int labels = uml.num_labels();
  IntegralLabeling f{std::vector<int>(n, 0)};
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    best = std::min(best, LabelingCost(uml, f));
    int v = 0;
    while (v < n && ++f.f[v] == labels) f.f[v++] = 0;
    if (v == n) break;
  }
  return best;
}

MulticutInstance PathExample() {
  return MakeInstance(
      {"s", "a", "t"},
      {{"s", "a", Weight(1), false}, {"a", "t", Weight(2), false}},
      {{"s", "t"}});
}

TEST(EnumerateMis, SingleEdge) {
  std::vector<VertexSet> want = {{0}, {1}};
  EXPECT_EQ(EnumerateMis(MakeDemand(2, {{0, 1}})), want);
}

TEST(EnumerateMis, IsolatedVertexJoinsEverySet) {
  std::vector<VertexSet> want = {{0, 2}, {1, 2}};
  EXPECT_EQ(EnumerateMis(MakeDemand(3, {{0, 1}})), want);
}

TEST(EnumerateMis, NoEdgesGivesAllTerminals) {
  std::vector<VertexSet> want = {{0, 1, 2}};
  EXPECT_EQ(EnumerateMis(MakeDemand(3, {})), want);
}

TEST(EnumerateMis, TriangleCastMatchesOracle) {
  DemandGraph h = testing::TriangleCastDemand(3);
  EXPECT_EQ(EnumerateMis(h), MisOracle(h));
}

TEST(EnumerateMis, RandomGraphsMatchOracle) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 150; ++round) {
    int n = 1 + testing::UniformInt(rng, 12);
    double p = testing::Uniform01(rng);
    DemandGraph h = testing::RandomDemand(rng, n, p);
    ASSERT_EQ(EnumerateMis(h), MisOracle(h)) << "round " << round;
  }
}

TEST(EnumerateMis, CountGuard) {
  // A perfect matching on 2m vertices has 2^m maximal independent sets.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 6; ++i) edges.emplace_back(2 * i, 2 * i + 1);
  DemandGraph h = MakeDemand(12, edges);
  EXPECT_EQ(EnumerateMis(h, 64).size(), 64u);
  try {
    EnumerateMis(h, 63);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeGuard);
  }
}

TEST(ReduceToUml, PathExampleCostTable) {
  MulticutInstance inst = PathExample();
  UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
  ASSERT_EQ(uml.num_labels(), 2);
  EXPECT_EQ(uml.labels[0], VertexSet{0});
  EXPECT_EQ(uml.labels[1], VertexSet{2});
  EXPECT_EQ(uml.allowed[0], (std::vector<char>{1, 0}));
  EXPECT_EQ(uml.allowed[2], (std::vector<char>{0, 1}));
  EXPECT_EQ(uml.allowed[1], (std::vector<char>{1, 1}));
}

TEST(ReduceToUml, NoDemandsSingleLabel) {
  MulticutInstance inst =
      MakeInstance({"a", "b"}, {{"a", "b", Weight(1), false}}, {}, {"a", "b"});
  UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
  ASSERT_EQ(uml.num_labels(), 1);
  EXPECT_EQ(SolveUmlLp(uml).value, 0.0);
}

TEST(ReduceToUml, RejectsDirectedEdges) {
  MulticutInstance inst =
      MakeInstance({"s", "t"}, {{"s", "t", Weight(1), true}}, {{"s", "t"}});
  try {
    ReduceToUml(inst, EnumerateMis(inst.demand));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDirectedInput);
  }
}

TEST(SolveUmlLp, PathExampleValue) {
  MulticutInstance inst = PathExample();
  FractionalLabeling frac =
      SolveUmlLp(ReduceToUml(inst, EnumerateMis(inst.demand)));
  EXPECT_NEAR(frac.value, 1.0, 1e-6);
  for (const auto& row : frac.x) {
    double sum = 0.0;
    for (double p : row) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(SolveUmlLp, IsolatedConflictingTerminals) {
  MulticutInstance inst = MakeInstance({"s", "t"}, {}, {{"s", "t"}});
  EXPECT_EQ(SolveUmlLp(ReduceToUml(inst, EnumerateMis(inst.demand))).value,
            0.0);
}

TEST(SolveUmlLp, InfiniteEdgeBetweenConflictingTerminals) {
  MulticutInstance inst = MakeInstance(
      {"s", "t"}, {{"s", "t", Weight::Infinite(), false}}, {{"s", "t"}});
  try {
    SolveUmlLp(ReduceToUml(inst, EnumerateMis(inst.demand)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  }
}

TEST(KtRound, IntegralInputIsReproduced) {
  MulticutInstance inst = PathExample();
  UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
  FractionalLabeling frac;
  frac.x = {{1, 0}, {0, 1}, {0, 1}};
  IntegralLabeling f = KtRound(uml, frac, 4, 3);
  EXPECT_EQ(f.f, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(LabelingCost(uml, f), 1.0);
}

TEST(KtRound, SingleLabel) {
  MulticutInstance inst = MakeInstance(
      {"a", "b", "c"}, {{"a", "b", Weight(1), false}}, {}, {"a", "c"});
  UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
  IntegralLabeling f = KtRound(uml, SolveUmlLp(uml), 1, 9);
  EXPECT_EQ(f.f, (std::vector<int>{0, 0, 0}));
}

TEST(KtRound, PathExampleWithinTwiceLp) {
  MulticutInstance inst = PathExample();
  UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
  FractionalLabeling frac = SolveUmlLp(uml);
  IntegralLabeling f = KtRound(uml, frac, 32, 12345);
  EXPECT_LE(LabelingCost(uml, f), 2 * frac.value + 1e-9);
  EXPECT_EQ(LabelingCost(uml, f), 1.0);
}

TEST(SolveTk2, PathExample) {
  CutSolution cut = SolveTk2(PathExample(), 2);
  EXPECT_EQ(cut.edges, std::vector<int>{0});
  EXPECT_EQ(cut.cost, 1.0);
}

TEST(SolveTk2, InducedMatchingIsReported) {
  MulticutInstance inst =
      MakeInstance({"a", "b", "c", "d"},
                   {{"a", "b", Weight(1), false}, {"c", "d", Weight(1), false}},
                   {{"a", "b"}, {"c", "d"}});
  try {
    SolveTk2(inst, 2);
    FAIL();
  } catch (const NotTk2FreeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTk2Free);
    EXPECT_EQ(e.witness().size(), 2u);
  }
}

MulticutInstance UndirectedTriangleCast(uint64_t seed, int k, int n) {
  GenOptions opt;
  opt.seed = seed;
  opt.n = n;
  opt.k = k;
  opt.edge_density = 0.7;
  opt.directedness = 0.0;
  opt.shape = DemandShape::kTriangleCast;
  opt.max_edges = 14;
  return GenerateInstance(opt);
}

TEST(ReduceToUml, OptimaAgreeWithMulticut) {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    MulticutInstance inst = UndirectedTriangleCast(seed, 2, 5);
    UmlInstance uml = ReduceToUml(inst, EnumerateMis(inst.demand));
    double opt;
    try {
      opt = BruteForceOpt(inst).cost;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kInfeasible);
      EXPECT_TRUE(std::isinf(LabelingOracle(uml)));
      continue;
    }
    EXPECT_NEAR(LabelingOracle(uml), opt, 1e-9) << "seed " << seed;
  }
}

TEST(SolveTk2, TriangleCastWithinTwiceOpt) {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    MulticutInstance inst = UndirectedTriangleCast(seed, 3, 7);
    double opt;
    try {
      opt = BruteForceOpt(inst).cost;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kInfeasible);
      continue;
    }
    Tk2Options options;
    options.seed = seed;
    CutSolution cut = SolveTk2(inst, 2, options);
    EXPECT_TRUE(VerifyCut(inst, cut)) << "seed " << seed;
    EXPECT_LE(cut.cost, 2 * opt + 1e-9) << "seed " << seed;
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

}  // namespace
}  // namespace multicut
