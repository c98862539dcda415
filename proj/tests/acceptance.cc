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

// Acceptance driver. Runs each criterion over seeded corpora with brute-force
// oracles and prints one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "multicut/csp.h"
#include "multicut/demand.h"
#include "multicut/distlp.h"
#include "multicut/error.h"
#include "multicut/generate.h"
#include "multicut/labellp.h"
#include "multicut/rounding.h"
#include "multicut/uml.h"
#include "testing.h"

namespace multicut {
namespace {

// Collects the first few failure messages and a running count.
class Tally {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (messages_.size() < 5) messages_.push_back(what);
  }
  void Note(const std::string& info) { notes_.push_back(info); }
  bool ok() const { return failures_ == 0; }
  int checks() const { return checks_; }
  int failures() const { return failures_; }
  const std::vector<std::string>& messages() const { return messages_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// Mixed directed/undirected instances with n <= 7, k <= 3, |E| <= 12.
std::vector<MulticutInstance> LpCorpus(double directedness) {
  std::vector<MulticutInstance> corpus;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 5 + static_cast<int>(seed % 3);
    o.k = 2 + static_cast<int>(seed % 2);
    o.edge_density = 0.5;
    o.directedness = directedness;
    o.max_edges = 12;
    corpus.push_back(GenerateInstance(o));
  }
  return corpus;
}

bool DistanceFeasible(const MulticutInstance& inst,
                      const FractionalEdgeSolution& x, double tol) {
  for (int e = 0; e < inst.supply.num_edges(); ++e) {
    if (x.x[e] < -tol || x.x[e] > 1 + tol) return false;
  }
  return inst.demand.edges.empty() || MinDemandDistance(inst, x.x) >= 1.0 - tol;
}

void LpEquivalence(Tally& t) {
  for (double directedness : {0.5, 1.0}) {
    const bool mixed = directedness < 1.0;
    double worst = 0;
    int over = 0, n = 0;
    for (const MulticutInstance& inst : LpCorpus(directedness)) {
      const double dist = SolveDistanceLp(inst).value;
      const double label = SolveLabelLp(inst).value;
      const double gap = std::fabs(dist - label);
      worst = std::max(worst, gap);
      ++n;
      if (gap > 1e-5) ++over;
      if (mixed) {
        t.Expect(gap <= 1e-5, Fmt("dist %.6f vs label %.6f", dist, label) +
                                  " on " +
                                  std::to_string(inst.supply.num_edges()) +
                                  "-edge instance");
      }
    }
    t.Note(std::string(mixed ? "mixed" : "directed-only") + " corpus: " +
           std::to_string(n) + " instances, " + std::to_string(over) +
           " differ, max |dist-label| = " + Fmt("%.3g", worst));
  }
}

void TranslationSoundness(Tally& t) {
  for (const MulticutInstance& inst : LpCorpus(0.5)) {
    DistanceLpSolution dist = SolveDistanceLp(inst);
    LabelSolution lifted = DistLpToLabel(inst, dist.x);
    std::string why;
    t.Expect(IsLabelLpFeasible(inst, lifted, 1e-6, &why),
             "dist->label infeasible: " + why);
    const double lifted_cost = FractionalCost(inst.supply, lifted.x);
    t.Expect(lifted_cost <= dist.value + 1e-6,
             Fmt("dist->label cost %.6f > dist %.6f", lifted_cost, dist.value));

    LabelLpSolution label = SolveLabelLp(inst);
    FractionalEdgeSolution down = LabelToDistLp(inst, label.solution);
    const double label_cost = FractionalCost(inst.supply, label.solution.x);
    const double down_cost = FractionalCost(inst.supply, down);
    t.Expect(down_cost == label_cost,
             Fmt("label->dist cost %.9f vs %.9f", down_cost, label_cost));
    t.Expect(DistanceFeasible(inst, down, 1e-7), "label->dist infeasible");
  }
}

struct ShapeCase {
  const char* name;
  DemandShape shape;
  int gen_k;
  int factor;  // k - 1 for the absent extension size k
};

void RoundingGuarantee(Tally& t) {
  const ShapeCase cases[] = {
      {"single pair", DemandShape::kDisjointMatching, 1, 1},
      {"complete-3", DemandShape::kComplete, 3, 2},
      {"matching-removed-complete-6", DemandShape::kMatchingRemovedComplete, 6,
       3},
  };
  for (double directedness : {1.0, 0.5}) {
    for (const ShapeCase& c : cases) {
      double worst_ratio = 0;
      for (uint64_t seed = 1; seed <= 20; ++seed) {
        GenOptions o;
        o.seed = seed;
        o.n = c.gen_k <= 3 ? 6 : 8;
        o.k = c.gen_k;
        o.shape = c.shape;
        o.edge_density = 0.6;
        o.directedness = directedness;
        o.max_edges = 14;
        MulticutInstance inst = GenerateInstance(o);
        const std::string tag = std::string(c.name) + " seed " +
                                std::to_string(seed) +
                                (directedness < 1 ? " (mixed)" : "");
        t.Expect(!FindMatchingExtension(inst.demand, c.factor + 1),
                 tag + ": demand has the extension");
        DistanceLpSolution lp = SolveDistanceLp(inst);
        RoundingOutcome r = DerandomizedRound(inst, lp.x);
        t.Expect(VerifyCut(inst, r.cut), tag + ": cut infeasible");
        t.Expect(r.cut.cost <= c.factor * lp.value + 1e-6,
                 tag + Fmt(": cost %.6f > %g * %.6f", r.cut.cost, c.factor,
                           lp.value));
        if (lp.value > 0)
          worst_ratio = std::max(worst_ratio, r.cut.cost / lp.value);
        for (int e = 0; e < inst.supply.num_edges(); ++e) {
          t.Expect(r.profile[e] <= c.factor * r.x.x[e] + 1e-9,
                   tag + Fmt(": profile %.9f > %g * %.9f", r.profile[e],
                             c.factor, r.x.x[e]));
        }
      }
      t.Note(std::string(c.name) + (directedness < 1 ? " mixed" : " directed") +
             Fmt(": worst cost/LP %.4f (bound %g)", worst_ratio, c.factor));
    }
  }
}

void CheckD1(Tally& t, const MulticutInstance& inst,
             const FractionalEdgeSolution& x, const std::string& tag) {
  const DistanceMatrix d = ShortestPaths(inst.supply, x.x);
  const D1Matrix d1 = ComputeD1(inst, d);
  const int n = inst.supply.num_vertices();
  std::vector<bool> source(n, false);
  for (auto [u, v] : inst.demand.edges) source[u] = true;
  for (int u = 0; u < n; ++u) {
    if (source[u]) {
      t.Expect(std::fabs(d1[u][u]) <= 1e-9, tag + ": d1(u,u) != 0");
    }
  }
  for (auto [u, v] : inst.demand.edges) {
    for (int w = 0; w < n; ++w) {
      t.Expect(d1[u][w] + d[w][v] >= 1.0 - 1e-9,
               tag + ": d1(u,w) + d(w,v) < 1");
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (std::fabs(d1[u][v]) <= 1e-9) continue;
      bool tight = false;
      for (auto [a, b] : inst.demand.edges) {
        if (a == u && std::fabs(d1[u][v] + d[v][b] - 1.0) <= 1e-9) {
          tight = true;
        }
      }
      t.Expect(tight, tag + ": nonzero d1 without a tight demand partner");
    }
    for (int e = 0; e < inst.supply.num_edges(); ++e) {
      const SupplyEdge& edge = inst.supply.edges[e];
      const double len = edge.weight.is_infinite() ? 0.0 : x.x[e];
      t.Expect(d1[u][edge.head] - d1[u][edge.tail] <= len + 1e-9,
               tag + ": d1 grows faster than x along an edge");
      if (!edge.directed) {
        t.Expect(d1[u][edge.tail] - d1[u][edge.head] <= len + 1e-9,
                 tag + ": d1 grows faster than x along an edge");
      }
    }
  }
}

void D1Properties(Tally& t) {
  int optima = 0;
  int seed = 0;
  for (const MulticutInstance& inst : LpCorpus(0.5)) {
    ++seed;
    const std::string tag = "instance " + std::to_string(seed);
    DistanceLpSolution dist = SolveDistanceLp(inst);
    CheckD1(t, inst, dist.x, tag);
    ++optima;
    // The label optimum projects to another Distance-LP optimum when the two
    // values agree.
    LabelLpSolution label = SolveLabelLp(inst);
    FractionalEdgeSolution down = LabelToDistLp(inst, label.solution);
    if (std::fabs(FractionalCost(inst.supply, down) - dist.value) <= 1e-7 &&
        DistanceFeasible(inst, down, 1e-9)) {
      CheckD1(t, inst, down, tag + " (label optimum)");
      ++optima;
    }
  }
  t.Note(std::to_string(optima) + " LP-optimal length vectors checked");
}

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
      if (!(mask >> a & 1)) continue;
      for (int b = a + 1; b < n && ok; ++b) {
        if ((mask >> b & 1) && adjacent(a, b)) ok = false;
      }
    }
    for (int a = 0; a < n && ok; ++a) {
      if (mask >> a & 1) continue;
      bool blocked = false;
      for (int b = 0; b < n && !blocked; ++b) {
        blocked = (mask >> b & 1) && adjacent(a, b);
      }
      ok = blocked;
    }
    if (!ok) continue;
    VertexSet s;
    for (int a = 0; a < n; ++a) {
      if (mask >> a & 1) s.push_back(h.terminals[a]);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Tk2Pipeline(Tally& t) {
  double worst = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 7;
    o.k = 2 + static_cast<int>(seed % 2);
    o.shape = DemandShape::kTriangleCast;
    o.edge_density = 0.7;
    o.directedness = 0.0;
    o.max_edges = 14;
    MulticutInstance inst = GenerateInstance(o);
    const std::string tag = "seed " + std::to_string(seed);
    const double opt = BruteForceOpt(inst).cost;
    Tk2Options options;
    options.seed = seed;
    options.trials = 32;
    CutSolution cut = SolveTk2(inst, 2, options);
    t.Expect(VerifyCut(inst, cut), tag + ": cut infeasible");
    t.Expect(cut.cost <= 2 * opt + 1e-9,
             tag + Fmt(": cost %.4f > 2 * OPT %.4f", cut.cost, opt));
    if (opt > 0) worst = std::max(worst, cut.cost / opt);
  }
  t.Note(Fmt("worst solve_tk2 cost/OPT %.4f over 20 triangle-cast instances",
             worst));
  std::mt19937_64 rng(5);
  int graphs = 0;
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + testing::UniformInt(rng, 12);
    DemandGraph h = testing::RandomDemand(rng, n, testing::Uniform01(rng));
    t.Expect(EnumerateMis(h) == MisOracle(h),
             "MIS enumeration differs on " + std::to_string(n) + " vertices");
    ++graphs;
  }
  t.Note(std::to_string(graphs) +
         " demand graphs compared with the MIS oracle");
}

// Multicut optimum, or nullopt when no finite cut exists.
std::optional<double> Opt(const MulticutInstance& inst) {
  try {
    return BruteForceOpt(inst).cost;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInfeasible) throw;
    return std::nullopt;
  }
}

void CspReductions(Tally& t) {
  int compared = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    MulticutInstance inst = testing::RandomBipartite(seed);
    MulticutInstance pre = PreprocessSupply(inst);
    CspInstance csp = MulticutToCsp(pre);
    const std::optional<double> opt = Opt(pre);
    t.Expect(opt == Opt(inst), tag + ": preprocessing changed OPT");
    if (!opt) {
      bool infeasible = false;
      try {
        BruteForceCsp(csp);
      } catch (const Error& e) {
        infeasible = e.code() == ErrorCode::kInfeasible;
      }
      t.Expect(infeasible, tag + ": CSP has a finite assignment");
      continue;
    }
    ++compared;
    const CspAssignment best = BruteForceCsp(csp);
    t.Expect(best.cost == *opt,
             tag + Fmt(": CSP optimum %.6f vs multicut %.6f", best.cost, *opt));
    const double label = SolveLabelLp(pre).value;
    const double basic = SolveBasicLp(csp).value;
    t.Expect(std::fabs(label - basic) <= 1e-5,
             tag + Fmt(": basic %.6f vs label %.6f", basic, label));

    MulticutInstance back = CspToMulticut(csp);
    t.Expect(Opt(back) == opt, tag + ": round trip changed OPT");
    t.Expect(std::fabs(SolveLabelLp(back).value - label) <= 1e-5,
             tag + ": round trip changed the Label LP");
    const CspInstance again = MulticutToCsp(PreprocessSupply(back));
    t.Expect(std::fabs(SolveBasicLp(again).value - basic) <= 1e-5,
             tag + ": round trip changed the Basic LP");

    // The optimal assignment as a 0/1 Basic-LP point, and back.
    const CspLabel size = csp.family.num_labels();
    BasicSolution z;
    for (CspLabel s : best.labels) {
      std::vector<double> row(size, 0.0);
      row[s] = 1.0;
      z.z_vertex.push_back(row);
    }
    for (const CspTuple& tuple : csp.tuples) {
      const bool unary = tuple.vars.size() == 1;
      std::vector<double> row(unary ? size : size * size, 0.0);
      row[unary ? best.labels[tuple.vars[0]]
                : best.labels[tuple.vars[0]] * size +
                      best.labels[tuple.vars[1]]] = 1.0;
      z.z_tuple.push_back(row);
    }
    LabelSolution lifted = BasicToLabel(pre, z);
    bool integral = true;
    for (const auto& rows : {lifted.z_vertex, lifted.z_edge}) {
      for (const auto& row : rows) {
        for (double p : row) integral &= p == 0.0 || p == 1.0;
      }
    }
    t.Expect(integral, tag + ": integral Basic point lifted fractionally");
    BasicSolution projected = LabelToBasic(pre, lifted);
    for (const auto& row : projected.z_vertex) {
      for (double p : row) integral &= p == 0.0 || p == 1.0;
    }
    t.Expect(integral, tag + ": integral Label point projected fractionally");
  }
  t.Expect(compared >= 30,
           "only " + std::to_string(compared) + " feasible instances compared");
  t.Note(std::to_string(compared) + " feasible bipartite instances compared");
}

MulticutInstance WithDemand(const MulticutInstance& inst, DemandGraph h) {
  MulticutInstance out = inst;
  out.demand = std::move(h);
  return out;
}

void Decomposition(Tally& t) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 8;
    o.k = 2 + static_cast<int>(seed % 7);
    o.edge_density = 0.4;
    o.directedness = 0.7;
    o.max_edges = 12;
    MulticutInstance inst = GenerateInstance(o);
    const std::string tag = "seed " + std::to_string(seed);
    const DemandGraph& h = inst.demand;
    std::vector<DemandGraph> parts = DecomposeBipartite(h);
    int bits = 0;
    while ((1 << bits) < h.num_terminals()) ++bits;
    t.Expect(static_cast<int>(parts.size()) == 2 * bits,
             tag + ": wrong part count");
    std::set<std::pair<int, int>> all;
    double sum = 0, max = 0;
    for (const DemandGraph& part : parts) {
      all.insert(part.edges.begin(), part.edges.end());
      std::set<int> sources, sinks;
      for (auto [s, v] : part.edges) {
        sources.insert(s);
        sinks.insert(v);
      }
      bool oriented = true;
      for (int s : sources) oriented &= !sinks.count(s);
      t.Expect(oriented, tag + ": part is not bipartite S->T");
      const double part_opt = BruteForceOpt(WithDemand(inst, part)).cost;
      sum += part_opt;
      max = std::max(max, part_opt);
    }
    t.Expect(
        all == std::set<std::pair<int, int>>(h.edges.begin(), h.edges.end()),
        tag + ": parts do not cover the demand edges");
    const double opt = BruteForceOpt(inst).cost;
    t.Expect(sum >= opt && opt >= max,
             tag + Fmt(": sum %.3f, OPT %.3f, max %.3f", sum, opt, max));
  }
}

void SingleDemandExact(Tally& t) {
  double worst = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 7;
    o.k = 1;
    o.shape = DemandShape::kDisjointMatching;
    o.edge_density = 0.5;
    o.directedness = 0.5;
    o.max_edges = 14;
    MulticutInstance inst = GenerateInstance(o);
    GapReport g = FlowCutGap(inst);
    worst = std::max(worst, std::fabs(g.ratio - 1.0));
    t.Expect(std::fabs(g.ratio - 1.0) <= 1e-6,
             "seed " + std::to_string(seed) + Fmt(": ratio %.9f", g.ratio));
  }
  t.Note(Fmt("max |ratio - 1| = %.3g over 50 seeds", worst));
}

void GadgetPreservesOpt(Tally& t) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.n = 6;
    o.k = 3;
    o.edge_density = 0.5;
    o.directedness = 0.5;
    o.max_edges = 10;
    MulticutInstance inst = GenerateInstance(o);
    const double before = BruteForceOpt(inst).cost;
    const double after = BruteForceOpt(UndirectedGadget(inst)).cost;
    t.Expect(before == after, "seed " + std::to_string(seed) +
                                  Fmt(": OPT %.3f vs %.3f", before, after));
  }
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Tally&)> run;
};

int Main() {
  const Criterion criteria[] = {
      {1, "Distance LP equals Label LP", LpEquivalence},
      {2, "LP solution translations are sound", TranslationSoundness},
      {3, "ball rounding stays within (k-1) LP", RoundingGuarantee},
      {4, "d1 properties", D1Properties},
      {5, "tK2-free pipeline and MIS enumeration", Tk2Pipeline},
      {6, "CSP reductions", CspReductions},
      {7, "bipartite decomposition", Decomposition},
      {8, "single demand is exact", SingleDemandExact},
      {9, "undirected gadget preserves OPT", GadgetPreservesOpt},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception& e) {
      t.Expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("criterion %d %s: %s (%d checks, %d failed, %.2fs)\n", c.number,
                t.ok() ? "PASS" : "FAIL", c.name, t.checks(), t.failures(),
                secs);
    for (const std::string& note : t.notes()) {
      std::printf("    info: %s\n", note.c_str());
    }
    for (const std::string& m : t.messages()) {
      std::printf("    failure: %s\n", m.c_str());
    }
    if (!t.ok()) ++failed;
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace multicut

int main() { return multicut::Main(); }
