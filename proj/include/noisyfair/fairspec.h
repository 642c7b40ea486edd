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

// Upper-bound matrices, relaxation vectors and the linear prefix constraints
//   sum_{i, j<=k} v_j P(i, l) R(i, j) <= U(k, l) * (1 + (1 - 1/(2 sqrt c)) gamma_k).

#ifndef NOISYFAIR_FAIRSPEC_H_
#define NOISYFAIR_FAIRSPEC_H_

#include <cstddef>
#include <span>
#include <vector>

#include "noisyfair/core.h"

namespace noisyfair {

// U(k, l) = ceil(k / p). Row k-1 holds prefix length k.
Matrix UEqualRepresentation(size_t n, size_t p);
// U(k, l) = ceil(k * sizes[l] / m).
Matrix UProportional(size_t n, std::span<const size_t> group_sizes, size_t m);
// U(k, l) = ceil(phi / p * k), phi in [1, p].
Matrix UPhi(size_t n, size_t p, double phi);

// All gamma builders read n from U.rows() and p from U.cols(); log is Log().
std::vector<double> GammaTheoretical(const Matrix& U, double delta,
                                     double constant = 12.0);
std::vector<double> GammaImproved(const Matrix& U, double psi, double delta);
std::vector<double> GammaPositionWeighted(const Matrix& U, double psi,
                                          double delta);
std::vector<double> GammaHeuristic(const Matrix& U);

// Fills spec.gamma according to spec.gamma_mode (explicit mode keeps the
// given vector and only checks its length).
void PopulateGamma(FairnessSpec& spec);

// Multiplier applied to U(k, l) on the right-hand side.
double RelaxationFactor(double gamma_k, double c);

struct LinearConstraint {
  struct Entry {
    size_t item;
    size_t slot;
    double value;
  };
  std::vector<Entry> entries;  // sparse coefficients, slot <= k
  double bound = 0.0;
  size_t k = 0;      // 0-based prefix end (prefix length k + 1)
  size_t group = 0;  // 0-based group
};

// One constraint per (k, l), ordered k-major; n * p constraints in total.
std::vector<LinearConstraint> BuildConstraints(const Matrix& P,
                                               const FairnessSpec& spec);

}  // namespace noisyfair

#endif  // NOISYFAIR_FAIRSPEC_H_
