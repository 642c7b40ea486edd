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

#include "noisyfair/fairspec.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

void CheckDelta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw Error(ErrorCode::kDeltaOutOfRange,
                "delta=" + std::to_string(delta) + " outside (0, 1/2]");
  }
}

// max_l sqrt(1 / U(k, l)) for every k.
std::vector<double> MaxInverseRoot(const Matrix& U) {
  std::vector<double> out(U.rows(), 0.0);
  for (size_t k = 0; k < U.rows(); ++k) {
    for (size_t l = 0; l < U.cols(); ++l) {
      if (!(U(k, l) > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma needs positive U");
      }
      out[k] = std::max(out[k], std::sqrt(1.0 / U(k, l)));
    }
  }
  return out;
}

void CheckPsi(const Matrix& U, double psi) {
  if (!(psi > 0.0)) throw Error(ErrorCode::kInvalidArgument, "psi must be positive");
  for (size_t k = 0; k < U.rows(); ++k) {
    for (size_t l = 0; l < U.cols(); ++l) {
      // Small slack so that U = ceil(k/2) passes for psi = 1/2 exactly.
      if (U(k, l) < psi * static_cast<double>(k + 1) - 1e-12) {
        throw Error(ErrorCode::kPsiAssumptionViolated,
                    "U(" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                        ") < psi * k");
      }
    }
  }
}

double LogTerm(const Matrix& U, double delta) {
  return Log(2.0 * static_cast<double>(U.rows()) * static_cast<double>(U.cols()) / delta);
}

}  // namespace

Matrix UEqualRepresentation(size_t n, size_t p) {
  if (n == 0 || p == 0) throw Error(ErrorCode::kInvalidArgument, "n and p must be positive");
  Matrix U(n, p);
  for (size_t k = 1; k <= n; ++k) {
    for (size_t l = 0; l < p; ++l) U(k - 1, l) = static_cast<double>((k + p - 1) / p);
  }
  return U;
}

Matrix UProportional(size_t n, std::span<const size_t> group_sizes, size_t m) {
  if (n == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "n and m must be positive");
  for (size_t s : group_sizes) {
    if (s == 0) throw Error(ErrorCode::kZeroGroupSize, "group of size zero");
  }
  Matrix U(n, group_sizes.size());
  for (size_t k = 1; k <= n; ++k) {
    for (size_t l = 0; l < group_sizes.size(); ++l) {
      U(k - 1, l) = static_cast<double>((k * group_sizes[l] + m - 1) / m);
    }
  }
  return U;
}

Matrix UPhi(size_t n, size_t p, double phi) {
  if (n == 0 || p == 0) throw Error(ErrorCode::kInvalidArgument, "n and p must be positive");
  if (!(phi >= 1.0 && phi <= static_cast<double>(p))) {
    throw Error(ErrorCode::kPhiOutOfRange,
                "phi=" + std::to_string(phi) + " outside [1, " + std::to_string(p) + "]");
  }
  Matrix U(n, p);
  for (size_t k = 1; k <= n; ++k) {
    // The tiny shift keeps exact integers (e.g. phi = p) from rounding up.
    const double value = std::ceil(phi / static_cast<double>(p) * static_cast<double>(k) - 1e-9);
    for (size_t l = 0; l < p; ++l) U(k - 1, l) = value;
  }
  return U;
}

std::vector<double> GammaTheoretical(const Matrix& U, double delta, double constant) {
  CheckDelta(delta);
  std::vector<double> gamma = MaxInverseRoot(U);
  const double scale = constant * LogTerm(U, delta);
  for (double& g : gamma) g *= scale;
  return gamma;
}

std::vector<double> GammaImproved(const Matrix& U, double psi, double delta) {
  CheckDelta(delta);
  CheckPsi(U, psi);
  std::vector<double> gamma = MaxInverseRoot(U);
  const double scale = std::sqrt(LogTerm(U, delta) / (2.0 * psi));
  for (double& g : gamma) g *= scale;
  return gamma;
}

std::vector<double> GammaPositionWeighted(const Matrix& U, double psi, double delta) {
  CheckDelta(delta);
  CheckPsi(U, psi);
  std::vector<double> gamma = MaxInverseRoot(U);
  const double scale = LogTerm(U, delta) / psi;
  for (double& g : gamma) g *= scale;
  return gamma;
}

std::vector<double> GammaHeuristic(const Matrix& U) {
  std::vector<double> gamma = MaxInverseRoot(U);
  for (double& g : gamma) g /= 20.0;
  return gamma;
}

void PopulateGamma(FairnessSpec& spec) {
  switch (spec.gamma_mode) {
    case GammaMode::kTheoretical:
      spec.gamma = GammaTheoretical(spec.U, spec.delta, spec.gamma_constant);
      break;
    case GammaMode::kImproved:
      spec.gamma = GammaImproved(spec.U, spec.psi, spec.delta);
      break;
    case GammaMode::kPositionWeighted:
      spec.gamma = GammaPositionWeighted(spec.U, spec.psi, spec.delta);
      break;
    case GammaMode::kHeuristic:
      spec.gamma = GammaHeuristic(spec.U);
      break;
    case GammaMode::kExplicit:
      break;
  }
  ValidateFairnessSpec(spec, /*require_gamma=*/true);
}

double RelaxationFactor(double gamma_k, double c) {
  return 1.0 + (1.0 - 1.0 / (2.0 * std::sqrt(c))) * gamma_k;
}

std::vector<LinearConstraint> BuildConstraints(const Matrix& P, const FairnessSpec& spec) {
  const size_t n = spec.U.rows();
  const size_t p = spec.U.cols();
  if (P.cols() != p) {
    throw Error(ErrorCode::kDimensionMismatch,
                "P has " + std::to_string(P.cols()) + " groups, U has " + std::to_string(p));
  }
  if (spec.gamma.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "gamma must have length n");
  }
  if (!spec.v.empty() && spec.v.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "v must have length n");
  }
  std::vector<LinearConstraint> out;
  out.reserve(n * p);
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = 0; l < p; ++l) {
      LinearConstraint con;
      con.k = k;
      con.group = l;
      con.bound = spec.U(k, l) * RelaxationFactor(spec.gamma[k], spec.c);
      for (size_t i = 0; i < P.rows(); ++i) {
        const double prob = P(i, l);
        if (prob == 0.0) continue;
        for (size_t j = 0; j <= k; ++j) {
          const double vj = spec.v.empty() ? 1.0 : spec.v[j];
          con.entries.push_back({i, j, vj * prob});
        }
      }
      out.push_back(std::move(con));
    }
  }
  return out;
}

}  // namespace noisyfair
