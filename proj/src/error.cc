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

#include "multicut/error.h"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "multicut/weight.h"

namespace multicut {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kValidation:
      return "ValidationError";
    case ErrorCode::kSizeGuard:
      return "SizeGuard";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kNotBipartite:
      return "NotBipartite";
    case ErrorCode::kNotTk2Free:
      return "NotTK2Free";
    case ErrorCode::kDirectedInput:
      return "DirectedInput";
    case ErrorCode::kAssumptionViolation:
      return "AssumptionViolation";
    case ErrorCode::kMalformedFamily:
      return "MalformedFamily";
    case ErrorCode::kInvalidCut:
      return "InvalidCut";
    case ErrorCode::kInfiniteEdgeCut:
      return "InfiniteEdgeCut";
    case ErrorCode::kMarginalMismatch:
      return "MarginalMismatch";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kParameter:
      return "ParameterError";
    case ErrorCode::kNumericFailure:
      return "NumericFailure";
    case ErrorCode::kInternal:
      return "InternalError";
  }
  return "Unknown";
}

std::string Weight::ToString() const {
  if (infinite_) return "inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value_);
  if (ec != std::errc()) throw Error(ErrorCode::kInternal, "weight format");
  return std::string(buffer, end);
}

Weight Weight::Parse(const std::string& text) {
  if (text == "inf" || text == "Infinite" || text == "infinity") {
    return Weight::Infinite();
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last || !std::isfinite(value)) {
    throw Error(ErrorCode::kParse, "invalid weight '" + text + "'");
  }
  return Weight(value);
}

}  // namespace multicut
