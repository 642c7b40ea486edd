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

// The continuous relaxation of the fair-ranking program, and an exhaustive
// integral oracle for small instances.

#ifndef NOISYFAIR_LPSOLVE_H_
#define NOISYFAIR_LPSOLVE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "noisyfair/core.h"
#include "noisyfair/fairspec.h"
#include "noisyfair/simplex.h"

namespace noisyfair {

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Matrix assignment;  // m x n, valid when optimal
  double objective = 0.0;
};

struct RelaxationOptions {
  SimplexOptions simplex;
  // Items solved first, ranked by their best utility; the rest are priced
  // against the duals and pulled in only if they could improve the optimum.
  // 0 means "always use every item".
  size_t initial_items_per_slot = 4;
};

// max <X, W> over fractional assignments X subject to the constraints.
LpSolution SolveRelaxation(const Instance& inst,
                           const std::vector<LinearConstraint>& constraints,
                           const RelaxationOptions& options = {});

// Largest absolute violation of any constraint by X (0 when all hold).
double MaxConstraintViolation(const Matrix& X,
                              const std::vector<LinearConstraint>& constraints);

struct BruteForceMode {
  enum class Kind { kExpected, kEpsilonDelta };
  Kind kind = Kind::kExpected;
  // Epsilon-delta mode: a ranking is admissible if, over `trials` sampled
  // memberships, the frequency of some prefix count exceeding
  // U(k, l) (1 + epsilon_k) is at most delta.
  std::vector<double> epsilon;
  double delta = 0.1;
  size_t trials = 1000;
  uint64_t seed = 0;
};

// Exhaustive search over all m!/(m-n)! rankings (m <= 8, n <= 4). Ties keep
// the lexicographically smallest ranking. nullopt means no ranking qualifies.
std::optional<Ranking> BruteForceOptimal(const Instance& inst, const FairnessSpec& spec,
                                         const BruteForceMode& mode = {});

}  // namespace noisyfair

#endif  // NOISYFAIR_LPSOLVE_H_
