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

// NResilient (LP relaxation -> BvN -> swap rounding) and the baselines.
// Every ranker returns a valid ranking or throws a typed Error.

#ifndef NOISYFAIR_RANKERS_H_
#define NOISYFAIR_RANKERS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noisyfair/core.h"
#include "noisyfair/lpsolve.h"
#include "noisyfair/swapround.h"

namespace noisyfair {

struct NResilientOptions {
  size_t t = kDefaultSwapT;
  RelaxationOptions relaxation;
};

struct NResilientTrace {
  Ranking ranking;
  LpSolution lp;
  ConvexCombination combination;
};

// spec.gamma is filled from spec.gamma_mode when it is empty.
NResilientTrace NResilientWithTrace(const Instance& inst, FairnessSpec spec, uint64_t seed,
                                    const NResilientOptions& options = {});
Ranking NResilient(const Instance& inst, const FairnessSpec& spec, uint64_t seed,
                   const NResilientOptions& options = {});

// Most likely group per item (lowest index on ties).
GroupSample ImputeBayes(const Matrix& P, GroupStructure structure);
// One independent draw from P per item.
GroupSample ImputeIndependent(const Matrix& P, GroupStructure structure, uint64_t seed);

// Utility-maximizing ranking: items by decreasing w (lower index on ties);
// without w, the optimal assignment.
Ranking Uncons(const Instance& inst);

// Greedy under known groups: at each slot the best remaining item whose
// groups all stay within U for the current prefix.
Ranking CsvGreedy(const Instance& inst, const GroupSample& groups, const Matrix& U);

// DetGreedy with target proportions alpha (summing to 1).
Ranking GakDetGreedy(const Instance& inst, const GroupSample& groups,
                     std::span<const double> alpha);

// LP with 0/1 memberships and gamma = 0, BvN, then one term sampled by weight.
Ranking SjSample(const Instance& inst, const GroupSample& groups, const Matrix& U,
                 uint64_t seed);

// Selects n items under sum_i P(i, l) s_i <= U(n, l) (the last row of U),
// rounds the LP selection and orders the chosen items by decreasing value.
Ranking McBaseline(const Instance& inst, const Matrix& U, uint64_t seed);

}  // namespace noisyfair

#endif  // NOISYFAIR_RANKERS_H_
