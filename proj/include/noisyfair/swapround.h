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

// Swap rounding of a convex combination of rankings. Two rankings are merged
// by repeatedly taking one connected piece of their symmetric difference
// (an alternating path or cycle) and resolving it in favour of one side with
// probability proportional to that side's weight. Every intermediate object
// is a complete ranking.

#ifndef NOISYFAIR_SWAPROUND_H_
#define NOISYFAIR_SWAPROUND_H_

#include <cstddef>
#include <vector>

#include "noisyfair/core.h"
#include "noisyfair/rng.h"

namespace noisyfair {

// A matching of slots to items; same representation as a ranking.
using Matching = Ranking;

struct Edge {
  size_t item;
  size_t slot;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct SwapUnit {
  enum class Shape { kSmall, kPath, kCycle };
  Shape shape = Shape::kSmall;
  std::vector<Edge> from_first;   // edges of the first matching in the unit
  std::vector<Edge> from_second;  // edges of the second matching in the unit
  std::vector<size_t> slots;      // slots touched, ascending

  size_t size() const { return from_first.size() + from_second.size(); }
};

inline constexpr size_t kDefaultSwapT = 100;

// Connected components of M xor N, ordered by their smallest slot. A unit
// is labeled kSmall when it has at most 2t edges, else by its shape.
std::vector<SwapUnit> GetPaths(const Matching& M, const Matching& N, size_t t);

// Replaces, inside the unit, the first matching's edges by the second's.
Matching ApplySwap(const Matching& M, const SwapUnit& unit);

// Merges M (weight alpha) and N (weight beta). Each unit ends up on M's side
// with probability alpha / (alpha + beta), independently across units.
Matching Merge(double alpha, const Matching& M, double beta, const Matching& N, size_t t,
               Rng& rng);

// Folds the terms left to right with Merge. The output's expected matrix
// equals the combination's matrix.
Ranking SwapRound(const ConvexCombination& comb, size_t t, Rng& rng);

}  // namespace noisyfair

#endif  // NOISYFAIR_SWAPROUND_H_
