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

#include "noisyfair/rankers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noisyfair/decompose.h"
#include "noisyfair/fairspec.h"
#include "noisyfair/noiselab.h"
#include "noisyfair/rng.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

// Intrinsic value used for ordering: w when known, else the top-slot utility.
double Value(const Instance& inst, size_t i) {
  return inst.w ? (*inst.w)[i] : inst.W(i, 0);
}

void CheckGroups(const Instance& inst, const GroupSample& groups) {
  if (groups.items() != inst.m) {
    throw Error(ErrorCode::kDimensionMismatch, "groups must cover all m items");
  }
}

Ranking RoundIntegralAssignment(const Matrix& X) {
  Matrix rounded(X.rows(), X.cols());
  for (size_t i = 0; i < X.rows(); ++i) {
    for (size_t j = 0; j < X.cols(); ++j) rounded(i, j) = X(i, j) > 0.5 ? 1.0 : 0.0;
  }
  return RankingFromMatrix(rounded);
}

}  // namespace

NResilientTrace NResilientWithTrace(const Instance& inst, FairnessSpec spec, uint64_t seed,
                                    const NResilientOptions& options) {
  ValidateInstance(inst);
  if (spec.U.rows() != inst.n || spec.U.cols() != inst.p) {
    throw Error(ErrorCode::kDimensionMismatch, "U must be n x p");
  }
  if (spec.gamma.empty() || spec.gamma_mode != GammaMode::kExplicit) PopulateGamma(spec);
  ValidateFairnessSpec(spec, /*require_gamma=*/true);
  NResilientTrace trace;
  trace.lp = SolveRelaxation(inst, BuildConstraints(inst.P, spec), options.relaxation);
  if (trace.lp.status != LpStatus::kOptimal) {
    throw Error(ErrorCode::kInfeasible, "fairness LP is infeasible");
  }
  trace.combination = BvnDecompose(trace.lp.assignment);
  Rng rng(seed);
  trace.ranking = SwapRound(trace.combination, options.t, rng);
  CheckRanking(trace.ranking, inst.m, inst.n);
  return trace;
}

Ranking NResilient(const Instance& inst, const FairnessSpec& spec, uint64_t seed,
                   const NResilientOptions& options) {
  return NResilientWithTrace(inst, spec, seed, options).ranking;
}

GroupSample ImputeBayes(const Matrix& P, GroupStructure structure) {
  if (structure == GroupStructure::kIndependentMarginals) {
    throw Error(ErrorCode::kInvalidArgument, "Bayes imputation needs categorical rows");
  }
  return GroupSample::FromLabels(MostLikelyLabels(P), P.cols());
}

GroupSample ImputeIndependent(const Matrix& P, GroupStructure structure, uint64_t seed) {
  return SampleGroups(P, structure, seed);
}

Ranking Uncons(const Instance& inst) {
  ValidateInstance(inst);
  if (!inst.w) {
    const LpSolution lp = SolveRelaxation(inst, {});
    return RoundIntegralAssignment(lp.assignment);
  }
  std::vector<size_t> order(inst.m);
  std::iota(order.begin(), order.end(), 0);
  const auto& w = *inst.w;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return w[a] > w[b]; });
  order.resize(inst.n);
  return Ranking{order};
}

Ranking CsvGreedy(const Instance& inst, const GroupSample& groups, const Matrix& U) {
  ValidateInstance(inst);
  CheckGroups(inst, groups);
  const size_t p = groups.groups();
  if (U.rows() != inst.n || U.cols() != p) throw Error(ErrorCode::kDimensionMismatch, "U shape");
  std::vector<double> count(p, 0.0);
  std::vector<char> placed(inst.m, 0);
  Ranking r;
  for (size_t j = 0; j < inst.n; ++j) {
    size_t best = inst.m;
    for (size_t i = 0; i < inst.m; ++i) {
      if (placed[i]) continue;
      bool fits = true;
      for (size_t l = 0; l < p && fits; ++l) {
        if (groups.Contains(i, l) && count[l] + 1.0 > U(j, l) + 1e-9) fits = false;
      }
      if (!fits) continue;
      if (best == inst.m || inst.W(i, j) > inst.W(best, j)) best = i;
    }
    if (best == inst.m) {
      throw Error(ErrorCode::kStuck, "no item fits at slot " + std::to_string(j + 1));
    }
    placed[best] = 1;
    for (size_t l = 0; l < p; ++l) count[l] += groups.Contains(best, l) ? 1.0 : 0.0;
    r.slots.push_back(best);
  }
  return r;
}

Ranking GakDetGreedy(const Instance& inst, const GroupSample& groups,
                     std::span<const double> alpha) {
  ValidateInstance(inst);
  CheckGroups(inst, groups);
  const size_t p = groups.groups();
  if (alpha.size() != p) throw Error(ErrorCode::kDimensionMismatch, "alpha length");
  double total = 0.0;
  for (double a : alpha) {
    if (a < 0.0) throw Error(ErrorCode::kInvalidArgument, "alpha must be nonnegative");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "alpha must sum to 1");
  if (!groups.IsDisjointCover()) throw Error(ErrorCode::kInvalidArgument, "needs disjoint groups");

  std::vector<size_t> count(p, 0);
  std::vector<char> placed(inst.m, 0);
  Ranking r;
  for (size_t j = 0; j < inst.n; ++j) {
    const double k = static_cast<double>(j + 1);
    // Best remaining item of each group for this slot.
    std::vector<size_t> top(p, inst.m);
    for (size_t i = 0; i < inst.m; ++i) {
      if (placed[i]) continue;
      const size_t l = groups.Label(i);
      if (top[l] == inst.m || inst.W(i, j) > inst.W(top[l], j)) top[l] = i;
    }
    std::vector<size_t> below_min;
    std::vector<size_t> below_max;
    for (size_t l = 0; l < p; ++l) {
      const double floor = std::floor(alpha[l] * k + 1e-9);
      const double ceil = std::ceil(alpha[l] * k - 1e-9);
      if (static_cast<double>(count[l]) < floor) below_min.push_back(l);
      else if (static_cast<double>(count[l]) < ceil) below_max.push_back(l);
    }
    const std::vector<size_t>& pool = below_min.empty() ? below_max : below_min;
    size_t choice = inst.m;
    for (size_t l : pool) {
      if (top[l] == inst.m) continue;
      if (choice == inst.m || inst.W(top[l], j) > inst.W(choice, j)) choice = top[l];
    }
    if (choice == inst.m) {
      throw Error(ErrorCode::kStuck, "no eligible group has items at slot " +
                                         std::to_string(j + 1));
    }
    placed[choice] = 1;
    ++count[groups.Label(choice)];
    r.slots.push_back(choice);
  }
  return r;
}

Ranking SjSample(const Instance& inst, const GroupSample& groups, const Matrix& U,
                 uint64_t seed) {
  ValidateInstance(inst);
  CheckGroups(inst, groups);
  FairnessSpec spec;
  spec.U = U;
  spec.gamma_mode = GammaMode::kExplicit;
  spec.gamma.assign(inst.n, 0.0);
  const LpSolution lp = SolveRelaxation(inst, BuildConstraints(groups.AsMatrix(), spec));
  if (lp.status != LpStatus::kOptimal) throw Error(ErrorCode::kInfeasible, "SJ LP infeasible");
  const ConvexCombination comb = BvnDecompose(lp.assignment);
  std::vector<double> weights;
  for (const auto& term : comb.terms) weights.push_back(term.weight);
  Rng rng(seed);
  return comb.terms[rng.Categorical(weights)].ranking;
}

namespace {

double MaxExcess(const std::vector<double>& load, const std::vector<double>& bound) {
  double excess = 0.0;
  for (size_t l = 0; l < load.size(); ++l) excess = std::max(excess, load[l] - bound[l]);
  return excess;
}

// Rounding can leave a group's expected count above its bound. Exchange one
// selected item for an unselected one at a time, taking the exchange that
// lowers the worst excess most (then loses least value), until none remains
// or no exchange helps.
void RepairSelection(const Instance& inst, const std::vector<double>& bound,
                     std::vector<size_t>& chosen) {
  const size_t p = inst.p;
  std::vector<double> load(p, 0.0);
  std::vector<char> in(inst.m, 0);
  for (size_t i : chosen) {
    in[i] = 1;
    for (size_t l = 0; l < p; ++l) load[l] += inst.P(i, l);
  }
  constexpr double kSlack = 1e-9;
  double excess = MaxExcess(load, bound);
  std::vector<double> trial(p);
  while (excess > kSlack) {
    size_t out_pos = chosen.size();
    size_t in_item = inst.m;
    double best_excess = excess;
    double best_loss = 0.0;
    for (size_t a = 0; a < chosen.size(); ++a) {
      const size_t i = chosen[a];
      for (size_t b = 0; b < inst.m; ++b) {
        if (in[b]) continue;
        for (size_t l = 0; l < p; ++l) trial[l] = load[l] - inst.P(i, l) + inst.P(b, l);
        const double e = std::max(0.0, MaxExcess(trial, bound));
        const double loss = Value(inst, i) - Value(inst, b);
        if (e < best_excess - 1e-12 ||
            (in_item != inst.m && std::abs(e - best_excess) <= 1e-12 && loss < best_loss)) {
          out_pos = a;
          in_item = b;
          best_excess = e;
          best_loss = loss;
        }
      }
    }
    if (in_item == inst.m) break;
    const size_t removed = chosen[out_pos];
    for (size_t l = 0; l < p; ++l) load[l] += inst.P(in_item, l) - inst.P(removed, l);
    in[removed] = 0;
    in[in_item] = 1;
    chosen[out_pos] = in_item;
    excess = MaxExcess(load, bound);
  }
}

}  // namespace

Ranking McBaseline(const Instance& inst, const Matrix& U, uint64_t seed) {
  ValidateInstance(inst);
  const size_t m = inst.m;
  const size_t n = inst.n;
  const size_t p = inst.p;
  if (U.rows() != n || U.cols() != p) throw Error(ErrorCode::kDimensionMismatch, "U shape");
  std::vector<double> bound(p);
  for (size_t l = 0; l < p; ++l) bound[l] = U(n - 1, l);

  LinearProgram lp;
  lp.num_vars = m;
  lp.objective.resize(m);
  for (size_t i = 0; i < m; ++i) lp.objective[i] = Value(inst, i);
  LpRow size_row;
  size_row.sense = RowSense::kEqual;
  size_row.rhs = static_cast<double>(n);
  for (size_t i = 0; i < m; ++i) size_row.entries.emplace_back(i, 1.0);
  lp.rows.push_back(std::move(size_row));
  for (size_t l = 0; l < p; ++l) {
    LpRow row;
    row.rhs = bound[l];
    for (size_t i = 0; i < m; ++i) {
      if (inst.P(i, l) != 0.0) row.entries.emplace_back(i, inst.P(i, l));
    }
    lp.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < m; ++i) lp.rows.push_back({{{i, 1.0}}, RowSense::kLessEqual, 1.0});
  const SimplexResult sol = SolveSimplex(lp);
  if (sol.status != LpStatus::kOptimal) throw Error(ErrorCode::kInfeasible, "MC LP infeasible");

  std::vector<size_t> chosen;
  std::vector<size_t> fractional;
  for (size_t i = 0; i < m; ++i) {
    if (sol.x[i] >= 1.0 - 1e-7) chosen.push_back(i);
    else if (sol.x[i] > 1e-7) fractional.push_back(i);
  }
  Rng rng(seed);
  if (chosen.size() > n) chosen.resize(n);
  const size_t need = n - chosen.size();
  if (need > 0) {
    if (fractional.size() < need) {
      throw Error(ErrorCode::kNumericalFailure, "MC selection lost mass while rounding");
    }
    std::vector<double> base(p, 0.0);
    for (size_t i : chosen) {
      for (size_t l = 0; l < p; ++l) base[l] += inst.P(i, l);
    }
    // Basic solutions have at most p + 1 fractional items; enumerate
    // completions, preferring (1) smallest bound excess, (2) value, (3) a
    // seeded coin among exact ties.
    if (fractional.size() <= 20) {
      std::vector<size_t> best;
      double best_excess = 0.0;
      double best_value = 0.0;
      size_t ties = 0;
      std::vector<size_t> pick;
      auto visit = [&](auto&& self, size_t from) -> void {
        if (pick.size() == need) {
          double excess = 0.0;
          double value = 0.0;
          for (size_t l = 0; l < p; ++l) {
            double load = base[l];
            for (size_t i : pick) load += inst.P(i, l);
            excess = std::max(excess, load - bound[l]);
          }
          excess = std::max(0.0, excess - 1e-9);
          for (size_t i : pick) value += Value(inst, i);
          const bool better = best.empty() || excess < best_excess - 1e-12 ||
                              (excess <= best_excess + 1e-12 && value > best_value + 1e-12);
          const bool tie = !best.empty() && std::abs(excess - best_excess) <= 1e-12 &&
                           std::abs(value - best_value) <= 1e-12;
          if (better && !tie) {
            best = pick;
            best_excess = excess;
            best_value = value;
            ties = 1;
          } else if (tie) {
            ++ties;
            if (rng.UniformIndex(ties) == 0) best = pick;
          }
          return;
        }
        for (size_t a = from; a < fractional.size(); ++a) {
          if (fractional.size() - a < need - pick.size()) break;
          pick.push_back(fractional[a]);
          self(self, a + 1);
          pick.pop_back();
        }
      };
      visit(visit, 0);
      chosen.insert(chosen.end(), best.begin(), best.end());
    } else {
      std::stable_sort(fractional.begin(), fractional.end(),
                       [&](size_t a, size_t b) { return sol.x[a] > sol.x[b]; });
      chosen.insert(chosen.end(), fractional.begin(), fractional.begin() + need);
    }
  }
  RepairSelection(inst, bound, chosen);
  std::stable_sort(chosen.begin(), chosen.end(), [&](size_t a, size_t b) {
    const double va = Value(inst, a);
    const double vb = Value(inst, b);
    return va != vb ? va > vb : a < b;
  });
  return Ranking{chosen};
}

}  // namespace noisyfair
