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

#ifndef MULTICUT_ROUNDING_H_
#define MULTICUT_ROUNDING_H_

#include <optional>
#include <vector>

#include "multicut/demand.h"
#include "multicut/distlp.h"
#include "multicut/instance.h"
#include "multicut/random.h"

namespace multicut {

// d1(u,v) = max(0, 1 - min over demands (u,v') of d(v,v')); zero rows for
// vertices without outgoing demands.
using D1Matrix = std::vector<std::vector<double>>;

D1Matrix ComputeD1(const MulticutInstance& instance, const DistanceMatrix& d);

// Clamps x into [0,1], zeroes infinite edges and, when rounding left some
// demand distance a hair below 1 (within 1e-6), rescales x until every
// demand distance is at least 1 in floating point. Throws Error(kInfeasible)
// when x is further from feasible.
FractionalEdgeSolution NormalizeLengths(const MulticutInstance& instance,
                                        const FractionalEdgeSolution& x);

// Union over u of the edges leaving B_u = { v : d1(u,v) <= theta }. An
// undirected edge leaves B_u when exactly one endpoint is inside. Throws
// Error(kInfiniteEdgeCut) if an infinite edge would be cut.
CutSolution BallCut(const MulticutInstance& instance, const D1Matrix& d1,
                    double theta);

// Measure of { theta in [0,1) : edge in BallCut(theta) }.
double CutProbability(const MulticutInstance& instance, const D1Matrix& d1,
                      int edge);
std::vector<double> CutProbabilityProfile(const MulticutInstance& instance,
                                          const D1Matrix& d1);

struct RoundingOutcome {
  double theta = 0.0;
  CutSolution cut;
  // Per edge, the theta-measure for which the edge is cut.
  std::vector<double> profile;
  // Normalized lengths the rounding ran on.
  FractionalEdgeSolution x;
};

// Evaluates every realizable ball cut (theta = 0 and every d1 value in
// (0,1)) and keeps the cheapest, ties toward the smaller theta.
RoundingOutcome DerandomizedRound(const MulticutInstance& instance,
                                  const FractionalEdgeSolution& x);

// One draw of theta uniform in [0,1).
RoundingOutcome RandomThetaRound(const MulticutInstance& instance,
                                 const FractionalEdgeSolution& x, Rng& rng);

// If some vertex v sees k sources with pairwise distinct nonzero d1(u,v),
// returns the induced k-matching-extension they certify: sources by
// decreasing d1(u,v), each paired with the demand partner nearest to v.
// Values closer than 1e-9 count as equal.
std::optional<MatchingExtensionWitness> ExtractMatchingExtension(
    const MulticutInstance& instance, const FractionalEdgeSolution& x, int k);

}  // namespace multicut

#endif  // MULTICUT_ROUNDING_H_
