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

#include "noisyfair/noiselab.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

double Clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

GroupSample SampleGroups(const Matrix& P, GroupStructure structure, Rng& rng) {
  GroupSample out(P.rows(), P.cols());
  for (size_t i = 0; i < P.rows(); ++i) {
    if (structure == GroupStructure::kIndependentMarginals) {
      for (size_t l = 0; l < P.cols(); ++l) out.Set(i, l, rng.Bernoulli(P(i, l)));
    } else {
      out.Set(i, rng.Categorical(P.row(i)), true);
    }
  }
  return out;
}

GroupSample SampleGroups(const Matrix& P, GroupStructure structure, uint64_t seed) {
  Rng rng(seed);
  return SampleGroups(P, structure, rng);
}

std::vector<size_t> MostLikelyLabels(const Matrix& P) {
  std::vector<size_t> labels(P.rows(), 0);
  for (size_t i = 0; i < P.rows(); ++i) {
    for (size_t l = 1; l < P.cols(); ++l) {
      if (P(i, l) > P(i, labels[i])) labels[i] = l;
    }
  }
  return labels;
}

RandomizedResponseResult RandomizedResponse(const GroupSample& truth,
                                            const RandomizedResponseParams& params, Rng& rng,
                                            std::optional<std::vector<double>> group_sizes) {
  const size_t m = truth.items();
  const size_t p = truth.groups();
  if (!truth.IsDisjointCover()) {
    throw Error(ErrorCode::kInvalidArgument, "randomized response needs disjoint groups");
  }
  if (p < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two groups");
  if (params.eta < 0.0) throw Error(ErrorCode::kInvalidArgument, "eta must be nonnegative");
  if (params.eta >= 0.5) throw Error(ErrorCode::kEtaTooLarge, "eta must be below 1/2");
  Matrix flip = params.flip;
  if (flip.empty()) {
    flip = Matrix(p, p, params.eta / static_cast<double>(p - 1));
    for (size_t a = 0; a < p; ++a) flip(a, a) = 1.0 - params.eta;
  } else if (flip.rows() != p || flip.cols() != p) {
    throw Error(ErrorCode::kDimensionMismatch, "flip matrix must be p x p");
  }

  RandomizedResponseResult out{GroupSample(m, p), Matrix(m, p)};
  std::vector<double> noisy_sizes(p, 0.0);
  std::vector<size_t> reported(m);
  for (size_t i = 0; i < m; ++i) {
    reported[i] = rng.Categorical(flip.row(truth.Label(i)));
    out.noisy.Set(i, reported[i], true);
    noisy_sizes[reported[i]] += 1.0;
  }
  std::vector<double> sizes;
  if (group_sizes) {
    if (group_sizes->size() != p) throw Error(ErrorCode::kDimensionMismatch, "group sizes");
    sizes = *group_sizes;
  } else if (params.estimate_group_sizes && p == 2) {
    // The estimator concentrates at (1 - eta) |G_1|; undo that factor so the
    // closed form below receives an estimate of |G_1| itself.
    const double first =
        EstimateGroupSize(noisy_sizes[0], noisy_sizes[1], params.eta) / (1.0 - params.eta);
    sizes = {first, static_cast<double>(m) - first};
  } else {
    for (size_t s : truth.GroupSizes()) sizes.push_back(static_cast<double>(s));
  }
  const bool closed_form = p == 2 && params.flip.empty();
  if (closed_form) {
    for (size_t b = 0; b < 2; ++b) {
      if (noisy_sizes[b] == 0.0) {
        throw Error(ErrorCode::kEmptyNoisyGroup, "noisy group " + std::to_string(b + 1) +
                                                     " is empty");
      }
    }
  }
  for (size_t i = 0; i < m; ++i) {
    const size_t b = reported[i];
    if (closed_form) {
      const double own = Clamp01((1.0 - params.eta) * sizes[b] / noisy_sizes[b]);
      out.p_hat(i, b) = own;
      out.p_hat(i, 1 - b) = 1.0 - own;
      continue;
    }
    // Bayes rule with the group sizes as prior: Pr[true a | reported b].
    double total = 0.0;
    for (size_t a = 0; a < p; ++a) {
      out.p_hat(i, a) = std::max(0.0, sizes[a]) * flip(a, b);
      total += out.p_hat(i, a);
    }
    if (total > 0.0) {
      for (size_t a = 0; a < p; ++a) out.p_hat(i, a) /= total;
    } else {
      out.p_hat(i, b) = 1.0;
    }
  }
  return out;
}

double EstimateGroupSize(double size_n1, double size_n2, double eta) {
  if (eta < 0.0) throw Error(ErrorCode::kInvalidArgument, "eta must be nonnegative");
  if (eta >= 0.5) throw Error(ErrorCode::kEtaTooLarge, "eta must be below 1/2");
  return (1.0 - eta) / (1.0 - 2.0 * eta) * ((1.0 - eta) * size_n1 - eta * size_n2);
}

Instance SynthNonuniformFdr(const FdrSynthSpec& spec, uint64_t seed) {
  if (!(spec.tau >= 0.0 && spec.tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  Rng rng(seed, 0);
  std::vector<double> w(spec.m);
  Matrix P(spec.m, 2);
  std::vector<size_t> component(spec.m);
  const double t = spec.tau;
  for (size_t i = 0; i < spec.m; ++i) {
    w[i] = rng.Uniform();
    double x;
    if (rng.Uniform() < spec.majority_weight) {
      component[i] = 0;
      x = (1.0 - t) * spec.mu1 + t * spec.shift1 + (1.0 - t) * spec.sigma1 * rng.Normal();
    } else {
      component[i] = 1;
      x = (1.0 - t) * spec.mu2 + t * spec.shift2 + (1.0 - t) * spec.sigma2 * rng.Normal();
    }
    P(i, 0) = Clamp01(x);
    P(i, 1) = 1.0 - P(i, 0);
  }
  Rng truth_rng(seed, 1);
  GroupSample truth = spec.truth_from_component
                          ? GroupSample::FromLabels(component, 2)
                          : SampleGroups(P, GroupStructure::kDisjoint, truth_rng);
  return MakeDcgInstance(std::move(w), spec.n, std::move(P), GroupStructure::kDisjoint,
                         std::move(truth));
}

std::vector<double> ImputationFdr(const Matrix& P, const GroupSample& truth) {
  const std::vector<size_t> labels = MostLikelyLabels(P);
  std::vector<double> imputed(P.cols(), 0.0);
  std::vector<double> wrong(P.cols(), 0.0);
  for (size_t i = 0; i < P.rows(); ++i) {
    imputed[labels[i]] += 1.0;
    if (!truth.Contains(i, labels[i])) wrong[labels[i]] += 1.0;
  }
  std::vector<double> fdr(P.cols(), 0.0);
  for (size_t l = 0; l < P.cols(); ++l) fdr[l] = imputed[l] > 0.0 ? wrong[l] / imputed[l] : 0.0;
  return fdr;
}

std::vector<double> OwnGroupErrorRate(const Matrix& P, const GroupSample& truth) {
  const std::vector<size_t> labels = MostLikelyLabels(P);
  std::vector<double> members(P.cols(), 0.0);
  std::vector<double> wrong(P.cols(), 0.0);
  for (size_t i = 0; i < P.rows(); ++i) {
    for (size_t l = 0; l < P.cols(); ++l) {
      if (!truth.Contains(i, l)) continue;
      members[l] += 1.0;
      if (labels[i] != l) wrong[l] += 1.0;
    }
  }
  std::vector<double> rate(P.cols(), 0.0);
  for (size_t l = 0; l < P.cols(); ++l) rate[l] = members[l] > 0.0 ? wrong[l] / members[l] : 0.0;
  return rate;
}

double MeasureFdrGap(const FdrSynthSpec& spec, size_t samples, uint64_t seed) {
  FdrSynthSpec big = spec;
  big.m = samples;
  big.n = 1;
  const Instance inst = SynthNonuniformFdr(big, seed);
  const std::vector<double> fdr = ImputationFdr(inst.P, *inst.truth);
  return fdr[1] - fdr[0];
}

double CalibrateTau(FdrSynthSpec spec, double target, size_t samples, uint64_t seed) {
  spec.tau = 0.0;
  if (MeasureFdrGap(spec, samples, seed) < target) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 30; ++iter) {
    spec.tau = 0.5 * (lo + hi);
    if (MeasureFdrGap(spec, samples, seed) >= target) lo = spec.tau;
    else hi = spec.tau;
  }
  return lo;
}

std::vector<double> MultigroupTaus(const MultigroupSpec& spec) {
  if (spec.p < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two groups");
  // Delta(tau) = Pr[N(mu(tau), sigma(tau)) < 1/2] increases with tau.
  auto delta = [&](double tau) {
    const double mu = (1.0 - tau) * spec.mu1 + tau * spec.mu2;
    const double sigma = (1.0 - tau) * spec.sigma1 + tau * spec.sigma2;
    return NormalCdf((0.5 - mu) / sigma);
  };
  std::vector<double> taus(spec.p);
  for (size_t l = 0; l < spec.p; ++l) {
    const double target = spec.fdr_low + static_cast<double>(l) / static_cast<double>(spec.p - 1) *
                                             (spec.fdr_high - spec.fdr_low);
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (delta(mid) < target) lo = mid;
      else hi = mid;
    }
    taus[l] = 0.5 * (lo + hi);
  }
  return taus;
}

Instance SynthMultigroup(const MultigroupSpec& spec, uint64_t seed) {
  if (spec.p < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two groups");
  const std::vector<double> taus = MultigroupTaus(spec);
  Rng rng(seed);
  std::vector<double> w(spec.m);
  Matrix P(spec.m, spec.p);
  std::vector<size_t> labels(spec.m);
  for (size_t i = 0; i < spec.m; ++i) {
    const size_t own = i % spec.p;
    labels[i] = own;
    w[i] = rng.Uniform();
    const double tau = taus[own];
    const double mu = (1.0 - tau) * spec.mu1 + tau * spec.mu2;
    const double sigma = (1.0 - tau) * spec.sigma1 + tau * spec.sigma2;
    const double x = Clamp01(mu + sigma * rng.Normal());
    size_t other = rng.UniformIndex(spec.p - 1);
    if (other >= own) ++other;
    P(i, own) = x;
    P(i, other) = 1.0 - x;
  }
  GroupSample truth = GroupSample::FromLabels(labels, spec.p);
  return MakeDcgInstance(std::move(w), spec.n, std::move(P), GroupStructure::kDisjoint,
                         std::move(truth));
}

Matrix IntersectMarginals(const std::vector<std::vector<double>>& marginals) {
  if (marginals.empty()) throw Error(ErrorCode::kInvalidArgument, "no attributes");
  const size_t m = marginals.front().size();
  const size_t attrs = marginals.size();
  if (attrs > 16) throw Error(ErrorCode::kTooLarge, "too many attributes");
  for (const auto& a : marginals) {
    if (a.size() != m) throw Error(ErrorCode::kDimensionMismatch, "ragged marginals");
    for (double x : a) {
      if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::kProbabilityOutOfRange, "marginal outside [0, 1]");
      }
    }
  }
  const size_t cells = size_t{1} << attrs;
  Matrix P(m, cells);
  for (size_t i = 0; i < m; ++i) {
    for (size_t cell = 0; cell < cells; ++cell) {
      double prob = 1.0;
      for (size_t a = 0; a < attrs; ++a) {
        const bool outside = (cell >> a) & 1;
        prob *= outside ? 1.0 - marginals[a][i] : marginals[a][i];
      }
      P(i, cell) = prob;
    }
  }
  return P;
}

size_t AdversarialGroup(const Matrix& U, size_t k) {
  if (k == 0 || k > U.rows()) throw Error(ErrorCode::kInvalidArgument, "k outside [1, n]");
  const double quarter = static_cast<double>(k) / 4.0;
  for (size_t l = 1; l < U.cols(); ++l) {
    if (U(k - 1, l) <= quarter) return l;
  }
  if (U.cols() > 0 && U(k - 1, 0) <= quarter) return 0;
  throw Error(ErrorCode::kFamilyConditionViolated,
              "no group has U(k, l) <= k/4 at k=" + std::to_string(k));
}

Matrix AdversarialLowerBoundInstance(const Matrix& U, size_t k, size_t m) {
  const size_t target = AdversarialGroup(U, k);
  if (U.cols() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two groups");
  const size_t other = target == 0 ? 1 : 0;
  const double q = U(k - 1, target) / static_cast<double>(k);
  Matrix P(m, U.cols());
  for (size_t i = 0; i < m; ++i) {
    P(i, target) = q;
    P(i, other) = 1.0 - q;
  }
  return P;
}

size_t IndependentTypeACount(size_t n, double beta, double phi) {
  if (!(beta > 0.0 && beta < 1.0) || !(phi > 0.0 && phi < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta and phi must lie in (0, 1)");
  }
  const double nn = static_cast<double>(n);
  return static_cast<size_t>(std::ceil(Log(nn / beta) * nn / Log(1.0 / (1.0 - phi))));
}

Instance ImputationFailureInstance(const ImputationFailureKind& kind, size_t n) {
  if (n == 0 || n % 2 != 0) throw Error(ErrorCode::kInvalidArgument, "n must be even");
  if (!(kind.beta > 0.0 && kind.beta < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in (0, 1/2)");
  }
  std::vector<double> p1;
  std::vector<double> value;
  auto add = [&](size_t count, double prob, double w) {
    for (size_t c = 0; c < count; ++c) {
      p1.push_back(prob);
      value.push_back(w);
    }
  };
  if (kind.kind == ImputationFailureKind::Kind::kBayes) {
    add(n / 2, 0.0, 1.0);
    add(n / 2, 0.5 + kind.beta, 1.0);
    add(n / 2, 1.0, 0.0);
  } else {
    add(IndependentTypeACount(n, kind.beta, kind.phi), kind.phi, 1.0);
    add(n, 1.0, 0.0);
    add(n, 0.0, 0.0);
  }
  const size_t m = p1.size();
  Instance inst;
  inst.m = m;
  inst.n = n;
  inst.p = 2;
  // Utilities are flat across positions here, not DCG.
  inst.W = Matrix(m, n);
  inst.P = Matrix(m, 2);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) inst.W(i, j) = value[i];
    inst.P(i, 0) = p1[i];
    inst.P(i, 1) = 1.0 - p1[i];
  }
  inst.structure = GroupStructure::kDisjoint;
  ValidateInstance(inst);
  return inst;
}

Instance HalfHalfInstance(size_t m, size_t n, size_t p) {
  if (m < 2 || p < 2) throw Error(ErrorCode::kInvalidArgument, "need m >= 2 and p >= 2");
  return MakeDcgInstance(std::vector<double>(m, 1.0), n,
                         Matrix(m, p, 1.0 / static_cast<double>(p)), GroupStructure::kDisjoint);
}

Instance ExpConstraintGapInstance(size_t m, size_t n) {
  if (m <= n) throw Error(ErrorCode::kInvalidArgument, "need m > n");
  Instance inst;
  inst.m = m;
  inst.n = n;
  inst.p = 2;
  inst.W = Matrix(m, n);
  inst.P = Matrix(m, 2, 0.5);
  for (size_t j = 0; j < n; ++j) inst.W(m - 1, j) = 1.0;
  inst.P(m - 1, 0) = 1.0;
  inst.P(m - 1, 1) = 0.0;
  inst.structure = GroupStructure::kDisjoint;
  ValidateInstance(inst);
  return inst;
}

GroupSample TwoGroupTruth(size_t m, double majority, uint64_t seed) {
  if (!(majority >= 0.0 && majority <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "majority must lie in [0, 1]");
  }
  const size_t first = static_cast<size_t>(std::llround(majority * static_cast<double>(m)));
  std::vector<size_t> labels(m, 1);
  std::fill(labels.begin(), labels.begin() + std::min(first, m), 0);
  Rng rng(seed);
  for (size_t i = m; i > 1; --i) std::swap(labels[i - 1], labels[rng.UniformIndex(i)]);
  return GroupSample::FromLabels(labels, 2);
}

}  // namespace noisyfair
