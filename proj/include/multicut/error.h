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

#ifndef MULTICUT_ERROR_H_
#define MULTICUT_ERROR_H_

#include <stdexcept>
#include <string>

namespace multicut {

// Error categories. The CLI maps these onto its exit codes.
enum class ErrorCode {
  kParse,                // malformed input text
  kValidation,           // input violates a type invariant
  kSizeGuard,            // an enumeration or LP size cap would be exceeded
  kInfeasible,           // no feasible (finite) solution exists
  kNotBipartite,         // demand graph has no S->T orientation
  kNotTk2Free,           // demand graph contains an induced t-matching
  kDirectedInput,        // undirected-only routine received directed data
  kAssumptionViolation,  // preprocessed-instance assumptions do not hold
  kMalformedFamily,      // predicate family does not come from a bipartite H
  kInvalidCut,           // cut contains an infinite-weight edge
  kInfiniteEdgeCut,      // a rounding ball is left through an infinite edge
  kMarginalMismatch,     // distributions do not sum to one / differ in size
  kDimensionMismatch,
  kParameter,       // bad generator or command-line parameter
  kNumericFailure,  // simplex iteration cap hit
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace multicut

#endif  // MULTICUT_ERROR_H_
