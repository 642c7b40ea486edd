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

#include "noisyfair/swapround.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "noisyfair/status.h"

namespace noisyfair {

std::vector<SwapUnit> GetPaths(const Matching& M, const Matching& N, size_t t) {
  if (t == 0) throw Error(ErrorCode::kInvalidArgument, "t must be positive");
  if (M.size() != N.size()) throw Error(ErrorCode::kDimensionMismatch, "matchings differ in size");
  const size_t n = M.size();
  // item -> slot in each matching, restricted to differing slots.
  std::unordered_map<size_t, size_t> slot_in_m;
  std::unordered_map<size_t, size_t> slot_in_n;
  for (size_t j = 0; j < n; ++j) {
    if (M.slots[j] == N.slots[j]) continue;
    slot_in_m[M.slots[j]] = j;
    slot_in_n[N.slots[j]] = j;
  }
  std::vector<char> seen(n, 0);
  std::vector<SwapUnit> units;
  for (size_t start = 0; start < n; ++start) {
    if (seen[start] || M.slots[start] == N.slots[start]) continue;
    // Walk the component: a slot links its M-item and N-item; an item links
    // the slot holding it in M and the slot holding it in N.
    SwapUnit unit;
    bool closed = true;
    std::vector<size_t> frontier{start};
    seen[start] = 1;
    while (!frontier.empty()) {
      const size_t j = frontier.back();
      frontier.pop_back();
      unit.slots.push_back(j);
      unit.from_first.push_back({M.slots[j], j});
      unit.from_second.push_back({N.slots[j], j});
      for (size_t item : {M.slots[j], N.slots[j]}) {
        for (const auto* index : {&slot_in_m, &slot_in_n}) {
          const auto it = index->find(item);
          if (it == index->end()) {
            closed = false;  // the item is an endpoint of a path
          } else if (!seen[it->second]) {
            seen[it->second] = 1;
            frontier.push_back(it->second);
          }
        }
      }
    }
    std::sort(unit.slots.begin(), unit.slots.end());
    auto by_slot = [](const Edge& x, const Edge& y) { return x.slot < y.slot; };
    std::sort(unit.from_first.begin(), unit.from_first.end(), by_slot);
    std::sort(unit.from_second.begin(), unit.from_second.end(), by_slot);
    if (unit.size() <= 2 * t) unit.shape = SwapUnit::Shape::kSmall;
    else unit.shape = closed ? SwapUnit::Shape::kCycle : SwapUnit::Shape::kPath;
    units.push_back(std::move(unit));
  }
  return units;
}

Matching ApplySwap(const Matching& M, const SwapUnit& unit) {
  Matching out = M;
  for (const Edge& e : unit.from_second) out.slots[e.slot] = e.item;
  return out;
}

Matching Merge(double alpha, const Matching& M, double beta, const Matching& N, size_t t,
               Rng& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "merge weights must be positive");
  }
  Matching first = M;
  Matching second = N;
  // Each round removes one component of the symmetric difference, so at most
  // n rounds are ever needed.
  const size_t cap = M.size() + 1;
  for (size_t round = 0;; ++round) {
    if (first == second) return first;
    if (round >= cap) {
      throw Error(ErrorCode::kIterationCapExceeded,
                  "merge did not converge in " + std::to_string(cap) + " rounds");
    }
    const std::vector<SwapUnit> units = GetPaths(first, second, t);
    const SwapUnit& unit = units.front();
    if (rng.Uniform() < beta / (alpha + beta)) {
      first = ApplySwap(first, unit);
    } else {
      SwapUnit reversed = unit;
      std::swap(reversed.from_first, reversed.from_second);
      second = ApplySwap(second, reversed);
    }
  }
}

Ranking SwapRound(const ConvexCombination& comb, size_t t, Rng& rng) {
  if (comb.terms.empty()) throw Error(ErrorCode::kInvalidArgument, "empty combination");
  Ranking current = comb.terms.front().ranking;
  double weight = comb.terms.front().weight;
  for (size_t s = 1; s < comb.terms.size(); ++s) {
    const WeightedRanking& term = comb.terms[s];
    if (!(term.weight > 0.0)) continue;
    current = Merge(weight, current, term.weight, term.ranking, t, rng);
    weight += term.weight;
  }
  return current;
}

}  // namespace noisyfair
