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

#include "multicut/lp.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "multicut/error.h"

namespace multicut {

int LinearProgram::AddVariable(std::string name, double lower, double upper,
                               double cost) {
  variables_.push_back({std::move(name), lower, upper});
  objective_.push_back(cost);
  return num_variables() - 1;
}

int LinearProgram::AddConstraint(std::vector<LpTerm> terms, Relation relation,
                                 double rhs, std::string name) {
  constraints_.push_back({std::move(terms), relation, rhs, std::move(name)});
  return num_constraints() - 1;
}

void LinearProgram::SetBounds(int var, double lower, double upper) {
  variables_[var].lower = lower;
  variables_[var].upper = upper;
}

double LinearProgram::Evaluate(std::span<const double> point) const {
  double value = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    if (objective_[j] != 0.0) value += objective_[j] * point[j];
  }
  return value;
}

void LinearProgram::CheckWellFormed() const {
  for (const LpVariable& v : variables_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper ||
        v.lower == kLpInfinity || v.upper == -kLpInfinity) {
      throw Error(ErrorCode::kValidation,
                  "variable '" + v.name + "' has invalid bounds");
    }
  }
  for (const LpConstraint& c : constraints_) {
    for (const LpTerm& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw Error(ErrorCode::kValidation,
                    "constraint '" + c.name + "' references unknown variable");
      }
      if (!std::isfinite(t.coef)) {
        throw Error(ErrorCode::kValidation,
                    "constraint '" + c.name + "' has a non-finite coefficient");
      }
    }
    if (!std::isfinite(c.rhs)) {
      throw Error(
          ErrorCode::kValidation,
          "constraint '" + c.name + "' has a non-finite right-hand side");
    }
  }
}

namespace {

std::string LpName(const std::string& name, char prefix, int index) {
  std::string out;
  for (char ch : name) {
    bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' ||
              ch == '.' || ch == '[' || ch == ']';
    out.push_back(ok ? ch : '_');
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) ||
      out[0] == '.') {
    out = std::string(1, prefix) + std::to_string(index) + "_" + out;
  }
  return out;
}

void AppendTerm(std::ostringstream& os, double coef, const std::string& name,
                bool first) {
  if (coef < 0) {
    os << (first ? "-" : " - ");
  } else if (!first) {
    os << " + ";
  }
  double mag = std::fabs(coef);
  if (mag != 1.0) os << mag << " ";
  os << name;
}

}  // namespace

std::string LinearProgram::ToLpFormat() const {
  std::vector<std::string> names;
  names.reserve(variables_.size());
  for (int j = 0; j < num_variables(); ++j) {
    names.push_back(LpName(variables_[j].name, 'x', j));
  }
  std::ostringstream os;
  os.precision(17);
  os << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < num_variables(); ++j) {
    if (objective_[j] == 0.0) continue;
    os << (first ? " " : "");
    AppendTerm(os, objective_[j], names[j], first);
    first = false;
  }
  if (first) os << " 0";
  os << "\nSubject To\n";
  for (int i = 0; i < num_constraints(); ++i) {
    const LpConstraint& c = constraints_[i];
    os << " " << LpName(c.name.empty() ? "c" : c.name, 'c', i);
    if (c.name.empty()) os << i;
    os << ":";
    bool first_term = true;
    for (const LpTerm& t : c.terms) {
      os << (first_term ? " " : "");
      AppendTerm(os, t.coef, names[t.var], first_term);
      first_term = false;
    }
    if (first_term && !names.empty()) os << " 0 " << names[0];
    switch (c.relation) {
      case Relation::kLessEqual:
        os << " <= ";
        break;
      case Relation::kEqual:
        os << " = ";
        break;
      case Relation::kGreaterEqual:
        os << " >= ";
        break;
    }
    os << c.rhs << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < num_variables(); ++j) {
    const LpVariable& v = variables_[j];
    if (v.lower == -kLpInfinity && v.upper == kLpInfinity) {
      os << " " << names[j] << " free\n";
    } else if (v.lower == v.upper) {
      os << " " << names[j] << " = " << v.lower << "\n";
    } else {
      os << " ";
      if (v.lower == -kLpInfinity) {
        os << "-inf";
      } else {
        os << v.lower;
      }
      os << " <= " << names[j] << " <= ";
      if (v.upper == kLpInfinity) {
        os << "+inf";
      } else {
        os << v.upper;
      }
      os << "\n";
    }
  }
  os << "End\n";
  return os.str();
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
    case LpStatus::kNumericFailure:
      return "NumericFailure";
  }
  return "Unknown";
}

bool CheckPoint(const LinearProgram& lp, std::span<const double> point,
                double tolerance) {
  if (static_cast<int>(point.size()) != lp.num_variables()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point has " + std::to_string(point.size()) +
                    " entries, LP has " + std::to_string(lp.num_variables()) +
                    " variables");
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    const LpVariable& v = lp.variables()[j];
    if (!std::isfinite(point[j])) return false;
    if (point[j] < v.lower - tolerance || point[j] > v.upper + tolerance) {
      return false;
    }
  }
  for (const LpConstraint& c : lp.constraints()) {
    double lhs = 0.0;
    for (const LpTerm& t : c.terms) lhs += t.coef * point[t.var];
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs + tolerance) return false;
        break;
      case Relation::kEqual:
        if (std::fabs(lhs - c.rhs) > tolerance) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs - tolerance) return false;
        break;
    }
  }
  return true;
}

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kDropTolerance = 1e-13;
constexpr int kDegenerateRunForBland = 50;

// Original variable j equals offset + sum over (column, sign) pairs.
struct VariableMap {
  double offset = 0.0;
  int pos = -1;  // column with sign +1
  int neg = -1;  // column with sign -1
};

enum class ColumnState : uint8_t { kBasic, kAtLower, kAtUpper };

class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const LpOptions& options)
      : lp_(lp), options_(options) {}

  LpResult Solve();

 private:
  bool Presolve();
  void BuildTableau();
  double& At(int row, int col) {
    return tab_[static_cast<size_t>(row) * n_ + col];
  }
  void ComputeReducedCosts(const std::vector<double>& cost);
  int Price(bool bland) const;
  enum class StepResult { kMoved, kUnbounded };
  StepResult Step(int entering, bool bland, double* step_length);
  void Pivot(int row, int col);
  LpStatus RunPhase(const std::vector<double>& cost);
  void DriveOutArtificials();
  double ColumnValue(int col) const;

  const LinearProgram& lp_;
  const LpOptions& options_;

  // Presolved form.
  std::vector<VariableMap> var_map_;
  std::vector<double> col_upper_;  // lower bounds are all zero
  std::vector<double> col_cost_;
  int num_structural_ = 0;
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Relation relation;
    double rhs;
  };
  std::vector<Row> rows_;
  bool trivially_infeasible_ = false;

  // Tableau.
  int m_ = 0;
  int n_ = 0;
  int first_artificial_ = 0;
  std::vector<double> tab_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<ColumnState> state_;
  std::vector<double> upper_;
  std::vector<char> blocked_;
  std::vector<double> reduced_;
  int64_t iterations_ = 0;
  int64_t max_iterations_ = 0;
};

bool BoundedSimplex::Presolve() {
  const int nv = lp_.num_variables();
  var_map_.assign(nv, {});
  for (int j = 0; j < nv; ++j) {
    const LpVariable& v = lp_.variables()[j];
    const double c = lp_.objective()[j];
    VariableMap& map = var_map_[j];
    if (v.lower == v.upper) {
      map.offset = v.lower;
    } else if (v.lower == -kLpInfinity && v.upper == kLpInfinity) {
      map.pos = num_structural_++;
      col_upper_.push_back(kLpInfinity);
      col_cost_.push_back(c);
      map.neg = num_structural_++;
      col_upper_.push_back(kLpInfinity);
      col_cost_.push_back(-c);
    } else if (v.lower == -kLpInfinity) {
      map.offset = v.upper;
      map.neg = num_structural_++;
      col_upper_.push_back(kLpInfinity);
      col_cost_.push_back(-c);
    } else {
      map.offset = v.lower;
      map.pos = num_structural_++;
      col_upper_.push_back(v.upper - v.lower);
      col_cost_.push_back(c);
    }
  }

  std::vector<double> dense(num_structural_, 0.0);
  std::vector<int> touched;
  for (const LpConstraint& c : lp_.constraints()) {
    double rhs = c.rhs;
    touched.clear();
    for (const LpTerm& t : c.terms) {
      const VariableMap& map = var_map_[t.var];
      rhs -= t.coef * map.offset;
      for (auto [col, sign] :
           {std::pair{map.pos, 1.0}, std::pair{map.neg, -1.0}}) {
        if (col < 0) continue;
        if (dense[col] == 0.0) touched.push_back(col);
        dense[col] += sign * t.coef;
        if (dense[col] == 0.0) dense[col] = 1e-300;  // keep slot registered
      }
    }
    Row row{{}, c.relation, rhs};
    std::sort(touched.begin(), touched.end());
    for (int col : touched) {
      if (std::fabs(dense[col]) > kDropTolerance) {
        row.terms.push_back({col, dense[col]});
      }
      dense[col] = 0.0;
    }
    if (row.terms.empty()) {
      const double tol = options_.feasibility_tolerance;
      bool ok = true;
      switch (c.relation) {
        case Relation::kLessEqual:
          ok = 0.0 <= rhs + tol;
          break;
        case Relation::kEqual:
          ok = std::fabs(rhs) <= tol;
          break;
        case Relation::kGreaterEqual:
          ok = 0.0 >= rhs - tol;
          break;
      }
      if (!ok) return false;
      continue;
    }
    rows_.push_back(std::move(row));
  }
  return true;
}

void BoundedSimplex::BuildTableau() {
  m_ = static_cast<int>(rows_.size());
  int num_slacks = 0;
  for (const Row& r : rows_) {
    if (r.relation != Relation::kEqual) ++num_slacks;
  }
  // Decide which rows need an artificial column.
  std::vector<int> slack_col(m_, -1);
  std::vector<double> slack_sign(m_, 0.0);
  std::vector<double> row_sign(m_, 1.0);
  int next = num_structural_;
  for (int i = 0; i < m_; ++i) {
    const Row& r = rows_[i];
    if (r.relation != Relation::kEqual) {
      slack_col[i] = next++;
      slack_sign[i] = r.relation == Relation::kLessEqual ? 1.0 : -1.0;
    }
    if (r.rhs < 0) row_sign[i] = -1.0;
  }
  first_artificial_ = next;
  std::vector<int> art_col(m_, -1);
  for (int i = 0; i < m_; ++i) {
    bool slack_basic = slack_col[i] >= 0 && slack_sign[i] * row_sign[i] > 0;
    if (!slack_basic) art_col[i] = next++;
  }
  n_ = next;
  (void)num_slacks;

  tab_.assign(static_cast<size_t>(m_) * n_, 0.0);
  beta_.assign(m_, 0.0);
  basis_.assign(m_, -1);
  state_.assign(n_, ColumnState::kAtLower);
  upper_.assign(n_, kLpInfinity);
  blocked_.assign(n_, 0);
  for (int c = 0; c < num_structural_; ++c) upper_[c] = col_upper_[c];

  for (int i = 0; i < m_; ++i) {
    const Row& r = rows_[i];
    const double s = row_sign[i];
    for (auto [col, coef] : r.terms) At(i, col) = s * coef;
    if (slack_col[i] >= 0) At(i, slack_col[i]) = s * slack_sign[i];
    beta_[i] = s * r.rhs;
    int basic = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    if (art_col[i] >= 0) At(i, art_col[i]) = 1.0;
    basis_[i] = basic;
    state_[basic] = ColumnState::kBasic;
  }

  max_iterations_ = options_.max_iterations > 0
                        ? options_.max_iterations
                        : std::max<int64_t>(50000, 50LL * (m_ + n_));
}

void BoundedSimplex::ComputeReducedCosts(const std::vector<double>& cost) {
  reduced_ = cost;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<size_t>(i) * n_];
    for (int c = 0; c < n_; ++c) {
      if (row[c] != 0.0) reduced_[c] -= cb * row[c];
    }
  }
  for (int i = 0; i < m_; ++i) reduced_[basis_[i]] = 0.0;
}

int BoundedSimplex::Price(bool bland) const {
  const double tol = options_.optimality_tolerance;
  int best = -1;
  double best_score = 0.0;
  for (int c = 0; c < n_; ++c) {
    if (blocked_[c] || state_[c] == ColumnState::kBasic) continue;
    if (upper_[c] == 0.0) continue;
    const double d = reduced_[c];
    double score = 0.0;
    if (state_[c] == ColumnState::kAtLower && d < -tol) score = -d;
    if (state_[c] == ColumnState::kAtUpper && d > tol) score = d;
    if (score == 0.0) continue;
    if (bland) return c;
    if (score > best_score) {
      best_score = score;
      best = c;
    }
  }
  return best;
}

double BoundedSimplex::ColumnValue(int col) const {
  return state_[col] == ColumnState::kAtUpper ? upper_[col] : 0.0;
}

void BoundedSimplex::Pivot(int row, int col) {
  double* prow = &tab_[static_cast<size_t>(row) * n_];
  const double inv = 1.0 / prow[col];
  std::vector<int> nz;
  nz.reserve(64);
  for (int c = 0; c < n_; ++c) {
    if (prow[c] == 0.0) continue;
    prow[c] *= inv;
    if (std::fabs(prow[c]) < kDropTolerance) {
      prow[c] = 0.0;
      continue;
    }
    nz.push_back(c);
  }
  prow[col] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    double* r = &tab_[static_cast<size_t>(i) * n_];
    const double f = r[col];
    if (f == 0.0) continue;
    for (int c : nz) {
      double v = r[c] - f * prow[c];
      r[c] = std::fabs(v) < kDropTolerance ? 0.0 : v;
    }
    r[col] = 0.0;
  }
  const double f = reduced_[col];
  if (f != 0.0) {
    for (int c : nz) reduced_[c] -= f * prow[c];
  }
  reduced_[col] = 0.0;
  basis_[row] = col;
  state_[col] = ColumnState::kBasic;
}

BoundedSimplex::StepResult BoundedSimplex::Step(int q, bool bland,
                                                double* step_length) {
  const double dir = state_[q] == ColumnState::kAtLower ? 1.0 : -1.0;
  double best = upper_[q];  // bound flip distance
  int leave_row = -1;
  bool leave_to_upper = false;
  double best_pivot = 0.0;
  for (int i = 0; i < m_; ++i) {
    const double a = At(i, q);
    if (std::fabs(a) < kPivotTolerance) continue;
    const double alpha = dir * a;  // basic i moves by -alpha * t
    const int b = basis_[i];
    double limit;
    bool to_upper;
    if (alpha > 0) {
      limit = beta_[i] / alpha;
      to_upper = false;
    } else {
      if (upper_[b] == kLpInfinity) continue;
      limit = (upper_[b] - beta_[i]) / -alpha;
      to_upper = true;
    }
    if (limit < 0) limit = 0;
    bool take = false;
    if (limit < best - 1e-12) {
      take = true;
    } else if (leave_row >= 0 && limit <= best + 1e-12) {
      take = bland ? b < basis_[leave_row] : std::fabs(a) > best_pivot;
    }
    if (take) {
      best = limit;
      leave_row = i;
      leave_to_upper = to_upper;
      best_pivot = std::fabs(a);
    }
  }
  if (leave_row < 0 && best == kLpInfinity) return StepResult::kUnbounded;
  *step_length = best;

  const double t = best;
  if (t != 0.0) {
    for (int i = 0; i < m_; ++i) {
      const double a = At(i, q);
      if (a != 0.0) beta_[i] -= dir * t * a;
    }
  }
  if (leave_row < 0) {
    state_[q] = state_[q] == ColumnState::kAtLower ? ColumnState::kAtUpper
                                                   : ColumnState::kAtLower;
    return StepResult::kMoved;
  }
  const double entering_value = ColumnValue(q) + dir * t;
  const int leaving = basis_[leave_row];
  state_[leaving] =
      leave_to_upper ? ColumnState::kAtUpper : ColumnState::kAtLower;
  Pivot(leave_row, q);
  beta_[leave_row] = entering_value;
  return StepResult::kMoved;
}

LpStatus BoundedSimplex::RunPhase(const std::vector<double>& cost) {
  ComputeReducedCosts(cost);
  int degenerate_run = 0;
  while (true) {
    const bool bland = degenerate_run >= kDegenerateRunForBland;
    const int q = Price(bland);
    if (q < 0) return LpStatus::kOptimal;
    if (++iterations_ > max_iterations_) return LpStatus::kNumericFailure;
    double t = 0.0;
    if (Step(q, bland, &t) == StepResult::kUnbounded) {
      return LpStatus::kUnbounded;
    }
    degenerate_run = t <= 1e-12 ? degenerate_run + 1 : 0;
  }
}

void BoundedSimplex::DriveOutArtificials() {
  for (int i = 0; i < m_; ++i) {
    if (basis_[i] < first_artificial_) continue;
    int best = -1;
    double best_mag = 1e-7;
    for (int c = 0; c < first_artificial_; ++c) {
      if (state_[c] == ColumnState::kBasic) continue;
      const double mag = std::fabs(At(i, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = c;
      }
    }
    if (best < 0) continue;  // redundant row; artificial stays at zero
    const int art = basis_[i];
    const double value = ColumnValue(best);
    state_[art] = ColumnState::kAtLower;
    Pivot(i, best);
    beta_[i] = value;
  }
  for (int c = first_artificial_; c < n_; ++c) {
    blocked_[c] = 1;
    upper_[c] = 0.0;
  }
}

LpResult BoundedSimplex::Solve() {
  LpResult result;
  if (!Presolve()) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  BuildTableau();

  if (first_artificial_ < n_) {
    std::vector<double> phase1(n_, 0.0);
    for (int c = first_artificial_; c < n_; ++c) phase1[c] = 1.0;
    LpStatus s = RunPhase(phase1);
    if (s == LpStatus::kNumericFailure) {
      result.status = s;
      result.iterations = iterations_;
      return result;
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (int i = 0; i < m_; ++i) {
      scale = std::max(scale, std::fabs(rows_[i].rhs));
      if (basis_[i] >= first_artificial_) infeasibility += beta_[i];
    }
    if (infeasibility > 1e-7 * scale) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations_;
      return result;
    }
    DriveOutArtificials();
  }

  std::vector<double> phase2(n_, 0.0);
  for (int c = 0; c < num_structural_; ++c) phase2[c] = col_cost_[c];
  result.status = RunPhase(phase2);
  result.iterations = iterations_;
  if (result.status != LpStatus::kOptimal) return result;

  std::vector<double> col_value(n_, 0.0);
  for (int c = 0; c < n_; ++c) col_value[c] = ColumnValue(c);
  for (int i = 0; i < m_; ++i) col_value[basis_[i]] = beta_[i];
  result.primal.resize(lp_.num_variables());
  for (int j = 0; j < lp_.num_variables(); ++j) {
    const VariableMap& map = var_map_[j];
    double x = map.offset;
    if (map.pos >= 0) x += col_value[map.pos];
    if (map.neg >= 0) x -= col_value[map.neg];
    const LpVariable& v = lp_.variables()[j];
    x = std::clamp(x, v.lower, v.upper);
    result.primal[j] = x;
  }
  result.objective_value = lp_.Evaluate(result.primal);
  return result;
}

}  // namespace

LpResult SolveLp(const LinearProgram& lp, const LpOptions& options) {
  lp.CheckWellFormed();
  BoundedSimplex solver(lp, options);
  return solver.Solve();
}

}  // namespace multicut
