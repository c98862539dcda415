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

#ifndef MULTICUT_IO_H_
#define MULTICUT_IO_H_

#include <string>

#include "json.hpp"
#include "multicut/csp.h"
#include "multicut/distlp.h"
#include "multicut/instance.h"
#include "multicut/labellp.h"

namespace multicut {

using Json = nlohmann::json;

inline constexpr char kInstanceSchema[] = "multicut-instance/1";
inline constexpr char kCspSchema[] = "multicut-csp/1";
inline constexpr char kLengthsSchema[] = "multicut-lengths/1";
inline constexpr char kLabelSolutionSchema[] = "multicut-label-solution/1";
inline constexpr char kBasicSolutionSchema[] = "multicut-basic-solution/1";

// Parses JSON text; throws Error(kParse) with the byte offset on failure.
Json ParseJson(const std::string& text);
// Two-space indented, sorted keys, trailing newline.
std::string DumpJson(const Json& doc);
// Value of the "schema" field; throws Error(kParse) when absent.
std::string SchemaOf(const Json& doc);

// Natural order on ids: digit runs compare numerically, so "e2" < "e10".
bool NaturalLess(const std::string& a, const std::string& b);

// Same instance with edges in natural id order.
MulticutInstance CanonicalInstance(const MulticutInstance& instance);

// Edges are written per kind in natural id order; parsing merges both lists
// back into natural id order. Weights are decimal strings or "inf".
Json InstanceToJson(const MulticutInstance& instance);
// Throws Error(kParse) naming the offending field. With `validate`, also
// runs RequireValid.
MulticutInstance InstanceFromJson(const Json& doc, bool validate = true);

std::string SerializeInstance(const MulticutInstance& instance);
MulticutInstance ParseInstance(const std::string& text);

const char* ViolationKindName(ViolationKind kind);

// Family sets and predicate names use 1-based positions.
Json CspToJson(const CspInstance& csp);
// Throws Error(kParse), Error(kMalformedFamily) or Error(kValidation).
CspInstance CspFromJson(const Json& doc);

Json LengthsToJson(const SupplyGraph& supply, const FractionalEdgeSolution& x,
                   double value);
FractionalEdgeSolution LengthsFromJson(const SupplyGraph& supply,
                                       const Json& doc);

// Sparse: only nonzero entries; pair keys are "tail-label,head-label".
Json LabelSolutionToJson(const MulticutInstance& instance,
                         const LabelSolution& solution, double value);
LabelSolution LabelSolutionFromJson(const MulticutInstance& instance,
                                    const Json& doc);

Json BasicSolutionToJson(const CspInstance& csp, const BasicSolution& z,
                         double value);
BasicSolution BasicSolutionFromJson(const CspInstance& csp, const Json& doc);

Json CutToJson(const SupplyGraph& supply, const CutSolution& cut);

}  // namespace multicut

#endif  // MULTICUT_IO_H_
