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

// A small two-phase revised simplex for  max c'x  s.t. rows, x >= 0.
//
// The basis inverse is kept dense and updated by elementary row operations,
// with a full refactorization at a fixed interval. Pricing is Dantzig's rule
// with lowest-index ties; after a run of degenerate pivots it switches to
// Bland's rule until the objective moves again. No randomness anywhere, so
// a given input always produces the same vertex.

#ifndef NOISYFAIR_SIMPLEX_H_
#define NOISYFAIR_SIMPLEX_H_

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace noisyfair {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  std::vector<std::pair<size_t, double>> entries;  // (variable, coefficient)
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

struct LinearProgram {
  size_t num_vars = 0;
  std::vector<double> objective;  // maximized
  std::vector<LpRow> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct SimplexOptions {
  size_t max_iterations = 500000;
  size_t refactor_interval = 100;
  size_t degenerate_switch = 50;   // consecutive degenerate pivots before Bland
  double feasibility_tol = 1e-7;   // phase-1 residual treated as infeasible
  double optimality_tol = 1e-9;    // reduced-cost threshold
  double pivot_tol = 1e-9;         // smallest usable pivot element
};

struct SimplexResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;      // num_vars values (valid when optimal)
  std::vector<double> duals;  // one per row, in the caller's row orientation
  double objective = 0.0;
  size_t iterations = 0;
};

// Throws Error(kNumericalFailure) when the iteration budget runs out or the
// basis becomes singular.
SimplexResult SolveSimplex(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace noisyfair

#endif  // NOISYFAIR_SIMPLEX_H_
