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

#ifndef MULTICUT_UML_H_
#define MULTICUT_UML_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "multicut/demand.h"
#include "multicut/distlp.h"
#include "multicut/error.h"
#include "multicut/instance.h"
#include "multicut/lp.h"

namespace multicut {

// Sorted vertex ids.
using VertexSet = std::vector<int>;

inline constexpr int64_t kDefaultMisCap = 100'000;

// All maximal independent sets of the demand graph viewed as undirected,
// over its declared terminals, in lexicographic order. Throws
// Error(kSizeGuard) beyond `max_sets` sets or 64 terminals.
std::vector<VertexSet> EnumerateMis(const DemandGraph& demand,
                                    int64_t max_sets = kDefaultMisCap);

// Uniform metric labeling with one label per maximal independent set. A
// terminal may take label i only if it lies in set i; other vertices may
// take any label.
struct UmlInstance {
  SupplyGraph graph;
  std::vector<VertexSet> labels;
  // allowed[v][i]: c(v, i) = 0 (otherwise infinite).
  std::vector<std::vector<char>> allowed;

  int num_labels() const { return static_cast<int>(labels.size()); }
};

// Throws Error(kDirectedInput) if the supply graph has a directed edge.
UmlInstance ReduceToUml(const MulticutInstance& instance,
                        std::vector<VertexSet> mis);

struct FractionalLabeling {
  // x[v][i], a distribution over labels per vertex.
  std::vector<std::vector<double>> x;
  // Per edge, half the L1 distance between endpoint distributions.
  std::vector<double> separation;
  double value = 0.0;
};

// Earth-mover LP for the uniform metric. Endpoints of infinite edges share
// one distribution. Throws Error(kInfeasible) if some vertex has no
// admissible label.
FractionalLabeling SolveUmlLp(const UmlInstance& uml,
                              const LpOptions& options = {});

struct IntegralLabeling {
  std::vector<int> f;
};

// Total weight of edges whose endpoints get different labels, or +inf when
// an assignment or an infinite edge costs infinity.
double LabelingCost(const UmlInstance& uml, const IntegralLabeling& labeling);

// Edges whose endpoints carry different labels.
CutSolution LabelingCut(const UmlInstance& uml,
                        const IntegralLabeling& labeling);

// Threshold rounding: each phase draws a label i and alpha in (0,1] and
// gives label i to every unassigned vertex with x[v][i] >= alpha. Keeps the
// cheapest of `trials` independent runs, ties toward the earlier trial.
IntegralLabeling KtRound(const UmlInstance& uml, const FractionalLabeling& frac,
                         int trials, uint64_t seed);

class NotTk2FreeError : public Error {
 public:
  NotTk2FreeError(std::string message, std::vector<DemandPair> witness)
      : Error(ErrorCode::kNotTk2Free, std::move(message)),
        witness_(std::move(witness)) {}
  const std::vector<DemandPair>& witness() const { return witness_; }

 private:
  std::vector<DemandPair> witness_;
};

struct Tk2Options {
  int trials = 32;
  uint64_t seed = 1;
  int64_t max_mis = kDefaultMisCap;
  SearchLimits search;
};

// Undirected multicut for demand graphs without an induced matching of size
// t: maximal independent sets, labeling LP, threshold rounding, cut. Throws
// NotTk2FreeError carrying the matching when one exists.
CutSolution SolveTk2(const MulticutInstance& instance, int t,
                     const Tk2Options& options = {});

}  // namespace multicut

#endif  // MULTICUT_UML_H_
