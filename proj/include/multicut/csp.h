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

#ifndef MULTICUT_CSP_H_
#define MULTICUT_CSP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multicut/demand.h"
#include "multicut/error.h"
#include "multicut/instance.h"
#include "multicut/labellp.h"
#include "multicut/lp.h"
#include "multicut/weight.h"

namespace multicut {

// Labels of the CSP are bit masks over the p sources: bit i set iff source
// i belongs to J_sigma.
using CspLabel = uint32_t;

inline constexpr int kMaxFamilySources = 8;

// The predicate family of a bipartite demand graph. Positions are 0-based.
struct PredicateFamily {
  int p = 0;
  int q = 0;
  std::vector<std::vector<int>> y;  // y[i], sorted source positions
  std::vector<std::vector<int>> z;  // z[j], sorted source positions
  // Dense tables over 2^p labels: 0 or +inf.
  std::vector<std::vector<double>> psi_a;
  std::vector<std::vector<double>> psi_b;
  // Dense tables over 4^p label pairs, index s1 * 2^p + s2: 0 or 1.
  std::vector<double> c;
  std::vector<double> nae2;

  CspLabel num_labels() const { return CspLabel{1} << p; }
};

// Throws Error(kNotBipartite), or Error(kSizeGuard) beyond
// kMaxFamilySources sources.
PredicateFamily BuildBeta(const DemandGraph& demand);

// Regenerates the tables from (p, q, y, z). Throws Error(kMalformedFamily)
// if y is not the family of the graph implied by z, and Error(kSizeGuard)
// beyond kMaxFamilySources sources.
PredicateFamily FamilyFromSets(int p, int q, std::vector<std::vector<int>> y,
                               std::vector<std::vector<int>> z);

enum class PredicateKind { kPsiA, kPsiB, kC, kNae2 };

struct PredicateRef {
  PredicateKind kind = PredicateKind::kC;
  int index = 0;  // source or sink position for the unary kinds

  int arity() const {
    return kind == PredicateKind::kPsiA || kind == PredicateKind::kPsiB ? 1 : 2;
  }
  bool operator==(const PredicateRef&) const = default;
};

// "psi_a:1", "psi_b:2" (1-based), "C", "NAE2".
std::string PredicateName(const PredicateRef& ref);
// Throws Error(kParse).
PredicateRef ParsePredicateName(const std::string& name);

struct CspTuple {
  std::vector<int> vars;
  PredicateRef predicate;
  Weight weight{1.0};
};

struct CspInstance {
  std::vector<std::string> vertices;
  PredicateFamily family;
  std::vector<CspTuple> tuples;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
};

// Arity, vertex range, predicate index and weight checks. Throws
// Error(kValidation).
void ValidateCsp(const CspInstance& csp);

// Predicate value on the given labels: 0, 1 or +inf.
double PredicateValue(const PredicateFamily& family, const PredicateRef& ref,
                      const CspLabel* labels);

// Splits every undirected edge {u,v} of weight w into fresh vertices x, y
// with infinite edges u->x, v->x, y->u, y->v and x->y of weight w. The x->y
// edge keeps the original edge id.
MulticutInstance UndirectedGadget(const MulticutInstance& instance);

// Moves every source and sink onto a fresh terminal copy joined to the
// original vertex by an infinite edge, then adds the infinite edges
// a_i' -> a_i for i' in Y_i \ {i} and a_i -> b_j for i in Z_j. Isolated
// terminals stay where they are. Throws Error(kNotBipartite).
MulticutInstance PreprocessSupply(const MulticutInstance& instance);

// Throws Error(kAssumptionViolation) unless every structural infinite edge
// is present, no directed edge leaves a sink and no directed edge other
// than the structural ones enters a source.
void CheckAssumptions(const MulticutInstance& instance);

// Unary tuples on the sources and sinks; one C tuple per directed edge and
// one NAE2 tuple per undirected edge, skipping the structural infinite
// edges. Throws Error(kAssumptionViolation).
CspInstance MulticutToCsp(const MulticutInstance& instance);

// Representatives are the first unused vertex of each unary predicate in
// tuple order; a predicate without one gets a fresh dummy vertex with a
// zero-weight tuple. Throws Error(kMalformedFamily).
MulticutInstance CspToMulticut(const CspInstance& csp);

struct BasicSolution {
  // z_vertex[v][sigma], 2^p entries.
  std::vector<std::vector<double>> z_vertex;
  // z_tuple[t][alpha], 2^p entries for unary tuples and 4^p for binary ones.
  std::vector<std::vector<double>> z_tuple;
};

inline constexpr int64_t kDefaultBasicLpCap = 65536;

struct BasicLp {
  LinearProgram lp;
  std::vector<std::vector<int>> vertex_var;
  std::vector<std::vector<int>> tuple_var;
};

// Throws Error(kSizeGuard) when |L|^(max arity) exceeds `max_table`.
BasicLp BuildBasicLp(const CspInstance& csp,
                     int64_t max_table = kDefaultBasicLpCap);

BasicSolution ExtractBasicSolution(const BasicLp& blp,
                                   std::span<const double> primal);

struct BasicLpSolution {
  double value = 0.0;
  BasicSolution solution;
};

// Throws Error(kInfeasible) when the LP is infeasible.
BasicLpSolution SolveBasicLp(const CspInstance& csp,
                             int64_t max_table = kDefaultBasicLpCap,
                             const LpOptions& options = {});

// Objective value; +inf when mass sits on an infinite predicate value.
double BasicCost(const CspInstance& csp, const BasicSolution& z,
                 double tolerance = 1e-9);

bool IsBasicLpFeasible(const CspInstance& csp, const BasicSolution& z,
                       double tolerance = 1e-7, std::string* reason = nullptr);

// Projection of a Label LP solution of the preprocessed `instance` onto the
// source bits. Throws Error(kInfeasible) on an infeasible input.
BasicSolution LabelToBasic(const MulticutInstance& instance,
                           const LabelSolution& solution);

// Extension of a Basic LP solution of MulticutToCsp(instance): every
// non-source terminal bit is set. Edges without a tuple get a cheapest
// coupling. Throws Error(kInfeasible) on an infeasible or infinite-cost
// input.
LabelSolution BasicToLabel(const MulticutInstance& instance,
                           const BasicSolution& z);

inline constexpr int64_t kDefaultCspEnumerationCap = 10'000'000;

struct CspAssignment {
  std::vector<CspLabel> labels;
  double cost = 0.0;
};

double AssignmentCost(const CspInstance& csp,
                      const std::vector<CspLabel>& labels);

// Exhaustive minimum; ties go to the lexicographically first assignment.
// Throws Error(kSizeGuard) past `max_assignments` and Error(kInfeasible)
// when every assignment has infinite cost.
CspAssignment BruteForceCsp(
    const CspInstance& csp,
    int64_t max_assignments = kDefaultCspEnumerationCap);

}  // namespace multicut

#endif  // MULTICUT_CSP_H_
