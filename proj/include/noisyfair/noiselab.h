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

// The noise model (independent random group membership with known marginals)
// and every instance generator used by tests and experiments.

#ifndef NOISYFAIR_NOISELAB_H_
#define NOISYFAIR_NOISELAB_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "noisyfair/core.h"
#include "noisyfair/rng.h"

namespace noisyfair {

// Draws a membership: one categorical label per row (disjoint, explicit
// joint) or one Bernoulli per entry (independent marginals).
GroupSample SampleGroups(const Matrix& P, GroupStructure structure, Rng& rng);
GroupSample SampleGroups(const Matrix& P, GroupStructure structure, uint64_t seed);

struct RandomizedResponseParams {
  double eta = 0.0;  // flip probability, < 1/2
  // Optional p x p row-stochastic matrix, flip(a, b) = Pr[report b | true a].
  // Empty means: keep with 1 - eta, move to each other group w.p. eta/(p-1).
  Matrix flip;
  // p = 2 only: replace |G_1| by EstimateGroupSize(|N_1|, |N_2|, eta) /
  // (1 - eta) and |G_2| by m minus that, since the true sizes are not
  // observable.
  bool estimate_group_sizes = false;
};

struct RandomizedResponseResult {
  GroupSample noisy;
  Matrix p_hat;  // m x p
};

// Flips each label independently and derives P-hat from the reported group.
// For p = 2: P-hat(i, a) = (1 - eta) |G_a| / |N_a| for i in N_a. When
// `group_sizes` is given it replaces the true |G_a| (e.g. by an estimate).
RandomizedResponseResult RandomizedResponse(
    const GroupSample& truth, const RandomizedResponseParams& params, Rng& rng,
    std::optional<std::vector<double>> group_sizes = std::nullopt);

// alpha_1 = ((1 - eta) / (1 - 2 eta)) ((1 - eta) |N_1| - eta |N_2|), which
// concentrates at (1 - eta) |G_1|.
double EstimateGroupSize(double size_n1, double size_n2, double eta);

// Two-component mixture for P(i, 1): with probability majority_weight the
// value is N((1 - tau) mu1 + tau shift1, (1 - tau) sigma1), otherwise
// N((1 - tau) mu2 + tau shift2, (1 - tau) sigma2); clamped to [0, 1].
struct FdrSynthSpec {
  size_t m = 500;
  size_t n = 25;
  double tau = 0.0;
  double mu1 = 0.95;
  double mu2 = 0.45;
  double sigma1 = 0.02;
  double sigma2 = 0.1;
  double shift1 = 1.0;
  double shift2 = 0.0;
  double majority_weight = 0.6;
  // Truth is sampled from P by default; when set, the true group is the
  // mixture component instead (component 1 is group 1).
  bool truth_from_component = false;
};

// w ~ U[0, 1], P and truth as above.
Instance SynthNonuniformFdr(const FdrSynthSpec& spec, uint64_t seed);

// False-discovery rate of the most-likely-group imputation, per group.
// Groups that receive no imputed items report 0.
std::vector<double> ImputationFdr(const Matrix& P, const GroupSample& truth);

// FDR_2 - FDR_1 of the mixture at `spec.tau`, measured on `samples` items.
double MeasureFdrGap(const FdrSynthSpec& spec, size_t samples, uint64_t seed);

// Largest tau whose measured gap is at least `target` (bisection; the gap
// decreases in tau). Returns 0 when even tau = 0 falls short.
double CalibrateTau(FdrSynthSpec spec, double target, size_t samples, uint64_t seed);

struct MultigroupSpec {
  size_t m = 500;
  size_t n = 25;
  size_t p = 4;
  double fdr_low = 0.10;
  double fdr_high = 0.40;
  double mu1 = 0.95;
  double mu2 = 0.45;
  double sigma1 = 0.02;
  double sigma2 = 0.1;
};

// Per-group tau chosen so that Delta(tau_l) = fdr_low + (l / (p - 1)) *
// (fdr_high - fdr_low), where Delta(tau) is the imputation FDR every group
// would have if all groups shared tau: the probability that an item's own
// entry falls below 1/2.
std::vector<double> MultigroupTaus(const MultigroupSpec& spec);

// Equal-size groups (item i starts in group i mod p); P(i, own) from the
// tau-interpolated normal, the complement on one other uniformly drawn group.
Instance SynthMultigroup(const MultigroupSpec& spec, uint64_t seed);

// Joint distribution over the 2^A cells of A independent binary attributes.
// Cell index bit a is set when the item is NOT in attribute a, so for two
// attributes the row is (ab, (1-a)b, a(1-b), (1-a)(1-b)).
Matrix IntersectMarginals(const std::vector<std::vector<double>>& marginals);

// Every item gets P(i, l*) = U(k, l*) / k and P(i, o) = 1 - U(k, l*) / k,
// where l* is the first group other than 0 with U(k, l*) <= k / 4 and o is
// group 0 (or group 1 when only group 0 qualifies). k is 1-based.
Matrix AdversarialLowerBoundInstance(const Matrix& U, size_t k, size_t m);
// The group l* selected above.
size_t AdversarialGroup(const Matrix& U, size_t k);

struct ImputationFailureKind {
  enum class Kind { kBayes, kIndependent };
  Kind kind = Kind::kBayes;
  double beta = 0.05;
  double phi = 0.05;  // independent kind only
};

// Bayes kind: n/2 items of type A (P1 = 0, W = 1), n/2 of type B
// (P1 = 1/2 + beta, W = 1), n/2 of type C (P1 = 1, W = 0).
// Independent kind: m_A items of type A (P1 = phi, W = 1), n of type B
// (P1 = 1, W = 0), n of type C (P1 = 0, W = 0).
Instance ImputationFailureInstance(const ImputationFailureKind& kind, size_t n);
size_t IndependentTypeACount(size_t n, double beta, double phi);

// All P entries 1/p, unit intrinsic values.
Instance HalfHalfInstance(size_t m, size_t n, size_t p = 2);

// P(i, 1) = 1/2 for i < m, P(m, 1) = 1; only the last item has utility.
Instance ExpConstraintGapInstance(size_t m, size_t n);

// Fraction of each group's items imputed to some other group.
std::vector<double> OwnGroupErrorRate(const Matrix& P, const GroupSample& truth);

// Two disjoint groups with exactly round(majority * m) items in group 0,
// positions shuffled.
GroupSample TwoGroupTruth(size_t m, double majority, uint64_t seed);

// Most-likely group per row, lowest index on ties.
std::vector<size_t> MostLikelyLabels(const Matrix& P);

}  // namespace noisyfair

#endif  // NOISYFAIR_NOISELAB_H_
