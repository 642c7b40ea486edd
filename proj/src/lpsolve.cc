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

#include "noisyfair/lpsolve.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "noisyfair/noiselab.h"
#include "noisyfair/rng.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

// (constraint, slot, coefficient) triples touching one item.
struct ItemTerm {
  size_t constraint;
  size_t slot;
  double value;
};

struct Restricted {
  SimplexResult result;
  std::vector<size_t> items;
};

Restricted SolveOn(const Instance& inst, const std::vector<LinearConstraint>& constraints,
                   const std::vector<std::vector<ItemTerm>>& by_item,
                   std::vector<size_t> items, const SimplexOptions& options) {
  const size_t n = inst.n;
  std::vector<size_t> local(inst.m, inst.m);
  for (size_t s = 0; s < items.size(); ++s) local[items[s]] = s;

  LinearProgram lp;
  lp.num_vars = items.size() * n;
  lp.objective.resize(lp.num_vars);
  for (size_t s = 0; s < items.size(); ++s) {
    for (size_t j = 0; j < n; ++j) lp.objective[s * n + j] = inst.W(items[s], j);
  }
  lp.rows.resize(constraints.size() + items.size() + n);
  for (size_t c = 0; c < constraints.size(); ++c) {
    lp.rows[c].sense = RowSense::kLessEqual;
    lp.rows[c].rhs = constraints[c].bound;
  }
  for (size_t s = 0; s < items.size(); ++s) {
    for (const ItemTerm& t : by_item[items[s]]) {
      lp.rows[t.constraint].entries.emplace_back(s * n + t.slot, t.value);
    }
  }
  const size_t item_row = constraints.size();
  const size_t slot_row = item_row + items.size();
  for (size_t s = 0; s < items.size(); ++s) {
    LpRow& row = lp.rows[item_row + s];
    row.sense = RowSense::kLessEqual;
    row.rhs = 1.0;
    for (size_t j = 0; j < n; ++j) row.entries.emplace_back(s * n + j, 1.0);
  }
  for (size_t j = 0; j < n; ++j) {
    LpRow& row = lp.rows[slot_row + j];
    row.sense = RowSense::kEqual;
    row.rhs = 1.0;
    for (size_t s = 0; s < items.size(); ++s) row.entries.emplace_back(s * n + j, 1.0);
  }
  return {SolveSimplex(lp, options), std::move(items)};
}

}  // namespace

LpSolution SolveRelaxation(const Instance& inst, const std::vector<LinearConstraint>& constraints,
                           const RelaxationOptions& options) {
  ValidateInstance(inst);
  const size_t m = inst.m;
  const size_t n = inst.n;
  std::vector<std::vector<ItemTerm>> by_item(m);
  for (size_t c = 0; c < constraints.size(); ++c) {
    for (const auto& e : constraints[c].entries) {
      if (e.item >= m || e.slot >= n) {
        throw Error(ErrorCode::kDimensionMismatch, "constraint entry outside m x n");
      }
      by_item[e.item].push_back({c, e.slot, e.value});
    }
  }

  // Start from the items with the largest attainable utility.
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> best(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) best[i] = std::max(best[i], inst.W(i, j));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return best[a] > best[b]; });
  size_t initial = options.initial_items_per_slot == 0
                       ? m
                       : std::min(m, options.initial_items_per_slot * n);
  std::vector<size_t> items(order.begin(), order.begin() + initial);
  std::sort(items.begin(), items.end());

  Restricted solved = SolveOn(inst, constraints, by_item, items, options.simplex);
  while (true) {
    if (solved.result.status != LpStatus::kOptimal) {
      if (solved.items.size() == m) break;
      // The restriction may be infeasible even when the full problem is not.
      std::vector<size_t> all(m);
      std::iota(all.begin(), all.end(), 0);
      solved = SolveOn(inst, constraints, by_item, std::move(all), options.simplex);
      continue;
    }
    if (solved.items.size() == m) break;
    // Price the excluded items: their assignment rows would carry a zero dual.
    const std::vector<double>& y = solved.result.duals;
    const size_t slot_row = constraints.size() + solved.items.size();
    std::vector<char> present(m, 0);
    for (size_t i : solved.items) present[i] = 1;
    std::vector<size_t> added;
    std::vector<double> reduced(n);
    for (size_t i = 0; i < m; ++i) {
      if (present[i]) continue;
      for (size_t j = 0; j < n; ++j) reduced[j] = inst.W(i, j) - y[slot_row + j];
      for (const ItemTerm& t : by_item[i]) reduced[t.slot] -= y[t.constraint] * t.value;
      if (*std::max_element(reduced.begin(), reduced.end()) > options.simplex.optimality_tol) {
        added.push_back(i);
      }
    }
    if (added.empty()) break;
    std::vector<size_t> next = solved.items;
    next.insert(next.end(), added.begin(), added.end());
    std::sort(next.begin(), next.end());
    solved = SolveOn(inst, constraints, by_item, std::move(next), options.simplex);
  }

  LpSolution out;
  out.status = solved.result.status;
  if (out.status == LpStatus::kUnbounded) {
    throw Error(ErrorCode::kNumericalFailure, "assignment LP reported unbounded");
  }
  if (out.status != LpStatus::kOptimal) return out;
  out.assignment = Matrix(m, n);
  for (size_t s = 0; s < solved.items.size(); ++s) {
    for (size_t j = 0; j < n; ++j) {
      double v = solved.result.x[s * n + j];
      if (v < 1e-12) v = 0.0;
      out.assignment(solved.items[s], j) = std::min(1.0, v);
    }
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) out.objective += out.assignment(i, j) * inst.W(i, j);
  }
  return out;
}

double MaxConstraintViolation(const Matrix& X, const std::vector<LinearConstraint>& constraints) {
  double worst = 0.0;
  for (const auto& con : constraints) {
    double lhs = 0.0;
    for (const auto& e : con.entries) lhs += e.value * X(e.item, e.slot);
    worst = std::max(worst, lhs - con.bound);
  }
  return worst;
}

std::optional<Ranking> BruteForceOptimal(const Instance& inst, const FairnessSpec& spec,
                                         const BruteForceMode& mode) {
  ValidateInstance(inst);
  const size_t m = inst.m;
  const size_t n = inst.n;
  const size_t p = inst.p;
  if (m > 8 || n > 4) {
    throw Error(ErrorCode::kTooLarge, "brute force supports m <= 8, n <= 4");
  }
  if (spec.U.rows() != n || spec.U.cols() != p) {
    throw Error(ErrorCode::kDimensionMismatch, "U must be n x p");
  }
  const auto v = [&](size_t j) { return spec.v.empty() ? 1.0 : spec.v[j]; };

  Matrix bound(n, p);
  std::vector<GroupSample> samples;
  if (mode.kind == BruteForceMode::Kind::kExpected) {
    for (size_t k = 0; k < n; ++k) {
      const double g = spec.gamma.size() == n ? spec.gamma[k] : 0.0;
      for (size_t l = 0; l < p; ++l) bound(k, l) = spec.U(k, l) * RelaxationFactor(g, spec.c);
    }
  } else {
    if (mode.epsilon.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "epsilon must have length n");
    }
    for (size_t k = 0; k < n; ++k) {
      for (size_t l = 0; l < p; ++l) bound(k, l) = spec.U(k, l) * (1.0 + mode.epsilon[k]);
    }
    // Common random numbers: every candidate is judged on the same samples.
    Rng rng(mode.seed);
    samples.reserve(mode.trials);
    for (size_t t = 0; t < mode.trials; ++t) {
      samples.push_back(SampleGroups(inst.P, inst.structure, rng));
    }
  }

  auto admissible = [&](const std::vector<size_t>& slots) {
    if (mode.kind == BruteForceMode::Kind::kExpected) {
      for (size_t l = 0; l < p; ++l) {
        double count = 0.0;
        for (size_t k = 0; k < n; ++k) {
          count += v(k) * inst.P(slots[k], l);
          if (count > bound(k, l) + 1e-9) return false;
        }
      }
      return true;
    }
    size_t violations = 0;
    for (const GroupSample& g : samples) {
      bool violated = false;
      for (size_t l = 0; l < p && !violated; ++l) {
        double count = 0.0;
        for (size_t k = 0; k < n; ++k) {
          if (g.Contains(slots[k], l)) count += v(k);
          if (count > bound(k, l)) {
            violated = true;
            break;
          }
        }
      }
      violations += violated ? 1 : 0;
    }
    return static_cast<double>(violations) <= mode.delta * static_cast<double>(samples.size());
  };

  std::optional<Ranking> best;
  double best_utility = -1.0;
  std::vector<size_t> slots(n);
  std::vector<char> used(m, 0);
  auto recurse = [&](auto&& self, size_t depth) -> void {
    if (depth == n) {
      double u = 0.0;
      for (size_t j = 0; j < n; ++j) u += inst.W(slots[j], j);
      if (u > best_utility + 1e-12 && admissible(slots)) {
        best_utility = u;
        best = Ranking{slots};
      }
      return;
    }
    for (size_t i = 0; i < m; ++i) {
      if (used[i]) continue;
      used[i] = 1;
      slots[depth] = i;
      self(self, depth + 1);
      used[i] = 0;
    }
  };
  recurse(recurse, 0);
  return best;
}

}  // namespace noisyfair
