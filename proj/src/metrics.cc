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

#include "noisyfair/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noisyfair/lpsolve.h"
#include "noisyfair/rng.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

// counts[c][l] = members of group l among the first checkpoints[c] slots.
std::vector<std::vector<double>> PrefixCounts(const Ranking& r, const GroupSample& truth,
                                              const std::vector<size_t>& checkpoints) {
  for (size_t item : r.slots) {
    if (item >= truth.items()) {
      throw Error(ErrorCode::kDimensionMismatch, "ranked item outside the group sample");
    }
  }
  std::vector<std::vector<double>> counts;
  std::vector<double> running(truth.groups(), 0.0);
  size_t next = 0;
  for (size_t j = 0; j < r.size() && next < checkpoints.size(); ++j) {
    for (size_t l = 0; l < truth.groups(); ++l) running[l] += truth.Contains(r.slots[j], l);
    if (j + 1 == checkpoints[next]) {
      counts.push_back(running);
      ++next;
    }
  }
  return counts;
}

}  // namespace

std::vector<size_t> Checkpoints(size_t n) {
  if (n < 5) {
    throw Error(ErrorCode::kEmptyCheckpointSet, "need n >= 5, got " + std::to_string(n));
  }
  std::vector<size_t> ks;
  for (size_t k = 5; k <= n; k += 5) ks.push_back(k);
  return ks;
}

double WeightedRd(const Ranking& r, const GroupSample& truth) {
  const std::vector<size_t> ks = Checkpoints(r.size());
  const auto counts = PrefixCounts(r, truth, ks);
  double z = 0.0;
  double penalty = 0.0;
  for (size_t c = 0; c < ks.size(); ++c) {
    const double k = static_cast<double>(ks[c]);
    const auto [lo, hi] = std::minmax_element(counts[c].begin(), counts[c].end());
    penalty += (*hi - *lo) / Log(k);
    z += k / Log(k);
  }
  return 1.0 - penalty / z;
}

double WeightedSl(const Ranking& r, const GroupSample& truth) {
  const std::vector<size_t> ks = Checkpoints(r.size());
  const auto counts = PrefixCounts(r, truth, ks);
  double z = 0.0;
  double total = 0.0;
  for (size_t c = 0; c < ks.size(); ++c) {
    const double weight = 1.0 / Log(static_cast<double>(ks[c]));
    const auto [lo, hi] = std::minmax_element(counts[c].begin(), counts[c].end());
    const double ratio = *hi == 0.0 ? 1.0 : *lo / *hi;
    total += weight * ratio;
    z += weight;
  }
  return total / z;
}

double PropRd(const Ranking& r, const GroupSample& truth, std::span<const size_t> group_sizes) {
  const size_t p = truth.groups();
  if (group_sizes.size() != p) throw Error(ErrorCode::kDimensionMismatch, "group sizes");
  for (size_t s : group_sizes) {
    if (s == 0) throw Error(ErrorCode::kZeroGroupSize, "group of size zero");
  }
  const std::vector<size_t> ks = Checkpoints(r.size());
  const auto counts = PrefixCounts(r, truth, ks);
  const double n = static_cast<double>(r.size());
  auto scaled = [&](double count, size_t l) {
    return count * n / static_cast<double>(group_sizes[l]);
  };
  double z = 0.0;
  double penalty = 0.0;
  for (size_t c = 0; c < ks.size(); ++c) {
    const size_t k = ks[c];
    const double weight = 1.0 / Log(static_cast<double>(k));
    double gap = 0.0;
    for (size_t l = 0; l < p; ++l) {
      for (size_t q = 0; q < p; ++q) {
        gap = std::max(gap, std::abs(scaled(counts[c][l], l) - scaled(counts[c][q], q)));
      }
    }
    // Largest gap any set of k items could show: fill l as far as possible,
    // push the rest into third groups first, and only then into q.
    double worst = 0.0;
    for (size_t l = 0; l < p; ++l) {
      for (size_t q = 0; q < p; ++q) {
        if (l == q) continue;
        size_t left = k;
        const size_t in_l = std::min(left, group_sizes[l]);
        left -= in_l;
        for (size_t o = 0; o < p && left > 0; ++o) {
          if (o == l || o == q) continue;
          left -= std::min(left, group_sizes[o]);
        }
        const size_t in_q = std::min(left, group_sizes[q]);
        worst = std::max(worst, scaled(static_cast<double>(in_l), l) -
                                    scaled(static_cast<double>(in_q), q));
      }
    }
    penalty += weight * gap;
    z += weight * worst;
  }
  if (z <= 0.0) return 1.0;
  return std::clamp(1.0 - penalty / z, 0.0, 1.0);
}

double MaxUtility(const Instance& inst) {
  if (inst.w) {
    std::vector<double> w = *inst.w;
    std::sort(w.begin(), w.end(), std::greater<>());
    double total = 0.0;
    for (size_t j = 0; j < inst.n; ++j) total += w[j] / Log(static_cast<double>(j) + 2.0);
    return total;
  }
  const LpSolution lp = SolveRelaxation(inst, {});
  return lp.objective;
}

double Ndcg(const Ranking& r, const Instance& inst) {
  const double best = MaxUtility(inst);
  if (best <= 0.0) return 1.0;
  return Utility(r, inst.W) / best;
}

MetricReport Evaluate(const Ranking& r, const Instance& inst, const GroupSample& truth) {
  MetricReport report;
  report.checkpoints = Checkpoints(r.size());
  report.rd = WeightedRd(r, truth);
  report.sl = WeightedSl(r, truth);
  report.prop_rd = PropRd(r, truth, truth.GroupSizes());
  report.utility = Utility(r, inst.W);
  report.ndcg = Ndcg(r, inst);
  return report;
}

ViolationProbe ProbeViolations(const Ranking& r, const Matrix& P, GroupStructure structure,
                               const Matrix& U, std::span<const double> epsilon, size_t trials,
                               uint64_t seed, std::span<const double> v) {
  const size_t n = r.size();
  const size_t p = P.cols();
  if (trials < 100) throw Error(ErrorCode::kInvalidArgument, "need at least 100 trials");
  if (U.rows() != n || U.cols() != p) throw Error(ErrorCode::kDimensionMismatch, "U shape");
  if (epsilon.size() != n) throw Error(ErrorCode::kDimensionMismatch, "epsilon length");
  if (!v.empty() && v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "v length");
  CheckRanking(r, P.rows(), n);

  Matrix bound(n, p);
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = 0; l < p; ++l) bound(k, l) = U(k, l) * (1.0 + epsilon[k]);
  }
  ViolationProbe probe;
  probe.epsilon.assign(epsilon.begin(), epsilon.end());
  probe.trials = trials;
  probe.frequency = Matrix(n, p);
  size_t violated_trials = 0;
  std::vector<double> count(p);
  std::vector<char> member(p);
  for (size_t t = 0; t < trials; ++t) {
    // One generator per trial: results do not depend on how trials are split.
    Rng rng(DeriveSeed(seed, t));
    std::fill(count.begin(), count.end(), 0.0);
    bool violated = false;
    for (size_t j = 0; j < n; ++j) {
      const auto row = P.row(r.slots[j]);
      if (structure == GroupStructure::kIndependentMarginals) {
        for (size_t l = 0; l < p; ++l) member[l] = rng.Bernoulli(row[l]);
      } else {
        std::fill(member.begin(), member.end(), 0);
        member[rng.Categorical(row)] = 1;
      }
      const double weight = v.empty() ? 1.0 : v[j];
      for (size_t l = 0; l < p; ++l) {
        if (member[l]) count[l] += weight;
        if (count[l] > bound(j, l)) {
          probe.frequency(j, l) += 1.0;
          violated = true;
        }
      }
    }
    violated_trials += violated ? 1 : 0;
  }
  const double tt = static_cast<double>(trials);
  probe.delta_hat = static_cast<double>(violated_trials) / tt;
  probe.std_error = std::sqrt(probe.delta_hat * (1.0 - probe.delta_hat) / tt);
  double worst = -1.0;
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = 0; l < p; ++l) {
      probe.frequency(k, l) /= tt;
      if (probe.frequency(k, l) > worst) {
        worst = probe.frequency(k, l);
        probe.worst_k = k;
        probe.worst_group = l;
      }
    }
  }
  return probe;
}

}  // namespace noisyfair
