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

#ifndef MULTICUT_TOOLS_CLI_H_
#define MULTICUT_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "multicut/error.h"

namespace multicut::cli {

// Defaults for caps come from MULTICUT_EDGE_CAP, MULTICUT_ENUM_CAP,
// MULTICUT_LABEL_K_CAP and MULTICUT_MIS_CAP when set.
struct RunConfig {
  uint64_t seed = 1;
  int trials = 32;
  // Finite edges the exact multicut search may enumerate.
  int edge_cap = 24;
  // Node cap of the demand-graph searches and of the CSP enumeration.
  int64_t enum_cap = 10'000'000;
  int label_k_cap = 4;
  int64_t mis_cap = 100'000;
  double tolerance = 1e-9;

  // Throws Error(kParameter) on malformed variables.
  static RunConfig FromEnvironment();
  // Throws Error(kParameter) unless every cap is positive.
  void Validate() const;
};

// 0 ok, 2 parse or validation, 3 size guard, 4 infeasible, 5 internal.
int ExitCodeFor(ErrorCode code);

// Runs one command line. Results go to `out`; diagnostics only to `err`.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace multicut::cli

#endif  // MULTICUT_TOOLS_CLI_H_
