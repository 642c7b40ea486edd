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

// Fairness and utility metrics on realized groups. Fairness metrics look at
// prefix counts at the checkpoints k = 5, 10, ..., n with weight 1/log k.

#ifndef NOISYFAIR_METRICS_H_
#define NOISYFAIR_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noisyfair/core.h"

namespace noisyfair {

// {5, 10, ...} up to n (1-based prefix lengths). Throws kEmptyCheckpointSet
// for n < 5.
std::vector<size_t> Checkpoints(size_t n);

// Weighted risk difference in [0, 1]; 1 is most fair.
double WeightedRd(const Ranking& r, const GroupSample& truth);
// Weighted selection lift in [0, 1]; 1 is most fair.
double WeightedSl(const Ranking& r, const GroupSample& truth);
// Risk difference on counts rescaled by n / |G_l|, normalized by the
// largest rescaled gap any ranking could show at each checkpoint.
double PropRd(const Ranking& r, const GroupSample& truth, std::span<const size_t> group_sizes);

// Utility divided by the best achievable utility.
double Ndcg(const Ranking& r, const Instance& inst);
// Best achievable utility (sorted w when present, assignment LP otherwise).
double MaxUtility(const Instance& inst);

struct MetricReport {
  double rd = 0.0;
  double sl = 0.0;
  double prop_rd = 0.0;
  double ndcg = 0.0;
  double utility = 0.0;
  std::vector<size_t> checkpoints;
};

// Prop-RD uses the truth's group sizes over all m items.
MetricReport Evaluate(const Ranking& r, const Instance& inst, const GroupSample& truth);

struct ViolationProbe {
  std::vector<double> epsilon;
  size_t trials = 0;
  double delta_hat = 0.0;
  double std_error = 0.0;
  // frequency(k, l): share of trials in which prefix k violated group l.
  Matrix frequency;
  size_t worst_k = 0;  // 0-based
  size_t worst_group = 0;
};

// Samples the ranked items' groups `trials` times and counts the trials in
// which some prefix count sum_{j<=k} v_j [item_j in G_l] exceeds
// U(k, l) (1 + epsilon_k). Empty v means unit weights.
ViolationProbe ProbeViolations(const Ranking& r, const Matrix& P, GroupStructure structure,
                               const Matrix& U, std::span<const double> epsilon,
                               size_t trials, uint64_t seed,
                               std::span<const double> v = {});

}  // namespace noisyfair

#endif  // NOISYFAIR_METRICS_H_
