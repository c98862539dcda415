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

#ifndef MULTICUT_LP_H_
#define MULTICUT_LP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace multicut {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kLpInfinity;
};

struct LpTerm {
  int var;
  double coef;
};

struct LpConstraint {
  std::vector<LpTerm> terms;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
  std::string name;
};

// Minimization LP with bounded variables:
//   min c.x  s.t.  row_i(x) (<=|=|>=) rhs_i,  lower <= x <= upper.
class LinearProgram {
 public:
  int AddVariable(std::string name, double lower, double upper,
                  double cost = 0.0);
  int AddConstraint(std::vector<LpTerm> terms, Relation relation, double rhs,
                    std::string name = "");

  void SetCost(int var, double cost) { objective_[var] = cost; }
  void SetBounds(int var, double lower, double upper);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LpConstraint>& constraints() const { return constraints_; }

  double Evaluate(std::span<const double> point) const;

  // Throws Error(kValidation) on inverted bounds or unknown variables.
  void CheckWellFormed() const;

  // CPLEX-style LP text (Minimize / Subject To / Bounds / End).
  std::string ToLpFormat() const;

 private:
  std::vector<LpVariable> variables_;
  std::vector<double> objective_;
  std::vector<LpConstraint> constraints_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericFailure };

const char* LpStatusName(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kNumericFailure;
  double objective_value = 0.0;
  std::vector<double> primal;
  int64_t iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct LpOptions {
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  // 0 picks a cap proportional to the problem size.
  int64_t max_iterations = 0;
};

// Two-phase bounded primal simplex on a dense tableau. Dantzig pricing,
// switching to Bland's rule while pivots stay degenerate. Deterministic.
LpResult SolveLp(const LinearProgram& lp, const LpOptions& options = {});

// True iff every bound and constraint holds within `tolerance`. Throws
// Error(kDimensionMismatch) if the point has the wrong size.
bool CheckPoint(const LinearProgram& lp, std::span<const double> point,
                double tolerance = 1e-9);

}  // namespace multicut

#endif  // MULTICUT_LP_H_
