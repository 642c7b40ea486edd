// Copyright 2026 The NoisyFair Authors.
//
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

#include "noisyfair/simplex.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

enum class ColumnKind : uint8_t { kStructural, kSlack, kArtificial };

struct Column {
  std::vector<uint32_t> rows;
  std::vector<double> values;
  ColumnKind kind = ColumnKind::kStructural;
};

class Solver {
 public:
  Solver(const LinearProgram& lp, const SimplexOptions& options)
      : options_(options), num_rows_(lp.rows.size()), num_structural_(lp.num_vars) {
    if (lp.objective.size() != lp.num_vars) {
      throw Error(ErrorCode::kDimensionMismatch, "objective length != num_vars");
    }
    columns_.resize(num_structural_);
    row_sign_.assign(num_rows_, 1.0);
    rhs_.assign(num_rows_, 0.0);
    std::vector<RowSense> sense(num_rows_);
    for (size_t r = 0; r < num_rows_; ++r) {
      const LpRow& row = lp.rows[r];
      // Keep every right-hand side nonnegative so the starting basis is feasible.
      const double sign = row.rhs < 0.0 ? -1.0 : 1.0;
      row_sign_[r] = sign;
      rhs_[r] = sign * row.rhs;
      sense[r] = row.sense;
      if (sign < 0.0 && row.sense == RowSense::kLessEqual) sense[r] = RowSense::kGreaterEqual;
      else if (sign < 0.0 && row.sense == RowSense::kGreaterEqual) sense[r] = RowSense::kLessEqual;
      for (const auto& [var, coeff] : row.entries) {
        if (var >= num_structural_) {
          throw Error(ErrorCode::kDimensionMismatch, "row references unknown variable");
        }
        if (coeff == 0.0) continue;
        columns_[var].rows.push_back(static_cast<uint32_t>(r));
        columns_[var].values.push_back(sign * coeff);
      }
    }
    basis_.assign(num_rows_, 0);
    for (size_t r = 0; r < num_rows_; ++r) {
      if (sense[r] == RowSense::kLessEqual) {
        basis_[r] = AddUnitColumn(r, 1.0, ColumnKind::kSlack);
      } else {
        if (sense[r] == RowSense::kGreaterEqual) AddUnitColumn(r, -1.0, ColumnKind::kSlack);
        basis_[r] = AddUnitColumn(r, 1.0, ColumnKind::kArtificial);
      }
    }
    in_basis_.assign(columns_.size(), -1);
    for (size_t r = 0; r < num_rows_; ++r) in_basis_[basis_[r]] = static_cast<int64_t>(r);
    objective_.assign(lp.objective.begin(), lp.objective.end());
    objective_.resize(columns_.size(), 0.0);
    binv_.assign(num_rows_ * num_rows_, 0.0);
    for (size_t r = 0; r < num_rows_; ++r) binv_[r * num_rows_ + r] = 1.0;
    x_basic_ = rhs_;
  }

  SimplexResult Solve() {
    SimplexResult result;
    std::vector<double> phase1(columns_.size(), 0.0);
    bool any_artificial = false;
    for (size_t j = 0; j < columns_.size(); ++j) {
      if (columns_[j].kind == ColumnKind::kArtificial) {
        phase1[j] = -1.0;
        any_artificial = true;
      }
    }
    if (any_artificial) {
      Run(phase1, /*phase_two=*/false);
      double infeasibility = 0.0;
      for (size_t r = 0; r < num_rows_; ++r) {
        if (columns_[basis_[r]].kind == ColumnKind::kArtificial) infeasibility += x_basic_[r];
      }
      if (infeasibility > options_.feasibility_tol) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      DriveOutArtificials();
    }
    if (!Run(objective_, /*phase_two=*/true)) {
      result.status = LpStatus::kUnbounded;
      result.iterations = iterations_;
      return result;
    }
    Refactor();
    result.status = LpStatus::kOptimal;
    result.x.assign(num_structural_, 0.0);
    for (size_t r = 0; r < num_rows_; ++r) {
      if (basis_[r] < num_structural_) result.x[basis_[r]] = std::max(0.0, x_basic_[r]);
    }
    for (size_t j = 0; j < num_structural_; ++j) result.objective += objective_[j] * result.x[j];
    const std::vector<double> y = Duals(objective_);
    result.duals.resize(num_rows_);
    for (size_t r = 0; r < num_rows_; ++r) result.duals[r] = row_sign_[r] * y[r];
    result.iterations = iterations_;
    return result;
  }

 private:
  size_t AddUnitColumn(size_t row, double value, ColumnKind kind) {
    Column col;
    col.rows.push_back(static_cast<uint32_t>(row));
    col.values.push_back(value);
    col.kind = kind;
    columns_.push_back(std::move(col));
    return columns_.size() - 1;
  }

  double& Binv(size_t r, size_t c) { return binv_[r * num_rows_ + c]; }

  // y' = c_B' B^-1.
  std::vector<double> Duals(const std::vector<double>& cost) const {
    std::vector<double> y(num_rows_, 0.0);
    for (size_t r = 0; r < num_rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      const double* row = &binv_[r * num_rows_];
      for (size_t c = 0; c < num_rows_; ++c) y[c] += cb * row[c];
    }
    return y;
  }

  double ReducedCost(size_t j, const std::vector<double>& cost,
                     const std::vector<double>& y) const {
    double d = cost[j];
    const Column& col = columns_[j];
    for (size_t e = 0; e < col.rows.size(); ++e) d -= y[col.rows[e]] * col.values[e];
    return d;
  }

  // alpha = B^-1 A_j.
  void Ftran(size_t j, std::vector<double>& alpha) const {
    alpha.assign(num_rows_, 0.0);
    const Column& col = columns_[j];
    for (size_t e = 0; e < col.rows.size(); ++e) {
      const size_t c = col.rows[e];
      const double v = col.values[e];
      for (size_t r = 0; r < num_rows_; ++r) alpha[r] += binv_[r * num_rows_ + c] * v;
    }
  }

  void Pivot(size_t leave_row, size_t enter, const std::vector<double>& alpha, double theta) {
    for (size_t r = 0; r < num_rows_; ++r) {
      if (r == leave_row) continue;
      x_basic_[r] -= theta * alpha[r];
      if (x_basic_[r] < 0.0 && x_basic_[r] > -1e-11) x_basic_[r] = 0.0;
    }
    x_basic_[leave_row] = theta;
    const double pivot = alpha[leave_row];
    double* prow = &binv_[leave_row * num_rows_];
    for (size_t c = 0; c < num_rows_; ++c) prow[c] /= pivot;
    for (size_t r = 0; r < num_rows_; ++r) {
      if (r == leave_row || alpha[r] == 0.0) continue;
      const double factor = alpha[r];
      double* row = &binv_[r * num_rows_];
      for (size_t c = 0; c < num_rows_; ++c) row[c] -= factor * prow[c];
    }
    in_basis_[basis_[leave_row]] = -1;
    basis_[leave_row] = enter;
    in_basis_[enter] = static_cast<int64_t>(leave_row);
    ++since_refactor_;
  }

  // Rebuilds B^-1 from scratch (Gauss-Jordan, partial pivoting) and x_B.
  void Refactor() {
    const size_t n = num_rows_;
    std::vector<double> b(n * n, 0.0);
    for (size_t r = 0; r < n; ++r) {
      const Column& col = columns_[basis_[r]];
      for (size_t e = 0; e < col.rows.size(); ++e) b[col.rows[e] * n + r] = col.values[e];
    }
    std::vector<double> inv(n * n, 0.0);
    for (size_t r = 0; r < n; ++r) inv[r * n + r] = 1.0;
    for (size_t c = 0; c < n; ++c) {
      size_t best = c;
      for (size_t r = c + 1; r < n; ++r) {
        if (std::abs(b[r * n + c]) > std::abs(b[best * n + c])) best = r;
      }
      if (std::abs(b[best * n + c]) < 1e-12) {
        throw Error(ErrorCode::kNumericalFailure, "singular basis during refactorization");
      }
      if (best != c) {
        for (size_t k = 0; k < n; ++k) {
          std::swap(b[best * n + k], b[c * n + k]);
          std::swap(inv[best * n + k], inv[c * n + k]);
        }
      }
      const double pivot = b[c * n + c];
      for (size_t k = 0; k < n; ++k) {
        b[c * n + k] /= pivot;
        inv[c * n + k] /= pivot;
      }
      for (size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        const double factor = b[r * n + c];
        if (factor == 0.0) continue;
        for (size_t k = 0; k < n; ++k) {
          b[r * n + k] -= factor * b[c * n + k];
          inv[r * n + k] -= factor * inv[c * n + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (size_t r = 0; r < n; ++r) {
      double v = 0.0;
      for (size_t c = 0; c < n; ++c) v += binv_[r * n + c] * rhs_[c];
      x_basic_[r] = std::abs(v) < 1e-12 ? 0.0 : v;
    }
    since_refactor_ = 0;
  }

  // Returns false if the problem is unbounded for this cost vector.
  bool Run(const std::vector<double>& cost, bool phase_two) {
    size_t degenerate_run = 0;
    std::vector<double> alpha;
    while (true) {
      if (iterations_ >= options_.max_iterations) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex exceeded " + std::to_string(options_.max_iterations) + " iterations");
      }
      if (since_refactor_ >= options_.refactor_interval) Refactor();
      const bool bland = degenerate_run >= options_.degenerate_switch;
      const std::vector<double> y = Duals(cost);
      size_t enter = columns_.size();
      double best = options_.optimality_tol;
      for (size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis_[j] >= 0 || columns_[j].kind == ColumnKind::kArtificial) continue;
        const double d = ReducedCost(j, cost, y);
        if (d > best) {
          enter = j;
          best = d;
          if (bland) break;
        }
      }
      if (enter == columns_.size()) return true;
      Ftran(enter, alpha);
      size_t leave = num_rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (size_t r = 0; r < num_rows_; ++r) {
        double ratio;
        if (phase_two && columns_[basis_[r]].kind == ColumnKind::kArtificial &&
            std::abs(alpha[r]) > options_.pivot_tol) {
          // A zero-level artificial must not move; force it out.
          ratio = 0.0;
        } else if (alpha[r] > options_.pivot_tol) {
          ratio = std::max(0.0, x_basic_[r]) / alpha[r];
        } else {
          continue;
        }
        bool take = false;
        if (leave == num_rows_ || ratio < best_ratio - 1e-12) {
          take = true;
        } else if (ratio <= best_ratio + 1e-12) {
          take = bland ? basis_[r] < basis_[leave]
                       : std::abs(alpha[r]) > std::abs(alpha[leave]);
        }
        if (take) {
          leave = r;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == num_rows_) return false;
      const double theta = (phase_two && columns_[basis_[leave]].kind == ColumnKind::kArtificial)
                               ? 0.0
                               : std::max(0.0, x_basic_[leave]) / alpha[leave];
      degenerate_run = theta * best <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter, alpha, theta);
      ++iterations_;
    }
  }

  // After phase 1, pivot zero-level artificials out of the basis where some
  // non-artificial column has a usable entry in their row.
  void DriveOutArtificials() {
    Refactor();
    std::vector<double> alpha;
    for (size_t r = 0; r < num_rows_; ++r) {
      if (columns_[basis_[r]].kind != ColumnKind::kArtificial) continue;
      const double* brow = &binv_[r * num_rows_];
      for (size_t j = 0; j < columns_.size(); ++j) {
        if (in_basis_[j] >= 0 || columns_[j].kind == ColumnKind::kArtificial) continue;
        double v = 0.0;
        const Column& col = columns_[j];
        for (size_t e = 0; e < col.rows.size(); ++e) v += brow[col.rows[e]] * col.values[e];
        if (std::abs(v) > 1e-7) {
          Ftran(j, alpha);
          Pivot(r, j, alpha, 0.0);
          ++iterations_;
          break;
        }
      }
    }
    Refactor();
  }

  SimplexOptions options_;
  size_t num_rows_;
  size_t num_structural_;
  std::vector<Column> columns_;
  std::vector<double> row_sign_;
  std::vector<double> rhs_;
  std::vector<double> objective_;
  std::vector<size_t> basis_;
  std::vector<int64_t> in_basis_;
  std::vector<double> binv_;
  std::vector<double> x_basic_;
  size_t iterations_ = 0;
  size_t since_refactor_ = 0;
};

}  // namespace

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "Optimal";
    case LpStatus::kInfeasible: return "Infeasible";
    case LpStatus::kUnbounded: return "Unbounded";
  }
  return "Unknown";
}

SimplexResult SolveSimplex(const LinearProgram& lp, const SimplexOptions& options) {
  Solver solver(lp, options);
  return solver.Solve();
}

}  // namespace noisyfair
