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

#include "noisyfair/core.h"

#include <algorithm>
#include <string>

#include "noisyfair/status.h"

namespace noisyfair {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::kNegativeUtility: return "NegativeUtility";
    case ErrorCode::kRowSumViolation: return "RowSumViolation";
    case ErrorCode::kInvalidRanking: return "InvalidRanking";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroGroupSize: return "ZeroGroupSize";
    case ErrorCode::kPhiOutOfRange: return "PhiOutOfRange";
    case ErrorCode::kDeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::kPsiAssumptionViolated: return "PsiAssumptionViolated";
    case ErrorCode::kNumericalFailure: return "NumericalFailure";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kNotDecomposable: return "NotDecomposable";
    case ErrorCode::kIterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::kStuck: return "Stuck";
    case ErrorCode::kEmptyNoisyGroup: return "EmptyNoisyGroup";
    case ErrorCode::kEtaTooLarge: return "EtaTooLarge";
    case ErrorCode::kFamilyConditionViolated: return "FamilyConditionViolated";
    case ErrorCode::kEmptyCheckpointSet: return "EmptyCheckpointSet";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix out(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    std::copy(rows[i].begin(), rows[i].end(), out.row(i).begin());
  }
  return out;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (size_t i = 0; i < rows_; ++i) {
    out[i].assign(row(i).begin(), row(i).end());
  }
  return out;
}

double Matrix::RowSum(size_t i) const {
  double s = 0.0;
  for (double x : row(i)) s += x;
  return s;
}

double Matrix::ColSum(size_t j) const {
  double s = 0.0;
  for (size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
  return s;
}

std::string_view GroupStructureName(GroupStructure s) {
  switch (s) {
    case GroupStructure::kDisjoint: return "disjoint";
    case GroupStructure::kIndependentMarginals: return "independent-marginals";
    case GroupStructure::kExplicitJoint: return "explicit-joint";
  }
  return "disjoint";
}

GroupStructure ParseGroupStructure(std::string_view name) {
  if (name == "disjoint") return GroupStructure::kDisjoint;
  if (name == "independent-marginals" || name == "independent") {
    return GroupStructure::kIndependentMarginals;
  }
  if (name == "explicit-joint") return GroupStructure::kExplicitJoint;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown group structure '" + std::string(name) + "'");
}

GroupSample GroupSample::FromLabels(std::span<const size_t> labels,
                                    size_t groups) {
  GroupSample out(labels.size(), groups);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= groups) {
      throw Error(ErrorCode::kDimensionMismatch, "group label out of range");
    }
    out.Set(i, labels[i], true);
  }
  return out;
}

GroupSample GroupSample::FromRows(const std::vector<std::vector<int>>& rows) {
  const size_t groups = rows.empty() ? 0 : rows.front().size();
  GroupSample out(rows.size(), groups);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != groups) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged membership rows");
    }
    for (size_t l = 0; l < groups; ++l) {
      if (rows[i][l] != 0 && rows[i][l] != 1) {
        throw Error(ErrorCode::kInvalidArgument, "membership entries must be 0/1");
      }
      out.Set(i, l, rows[i][l] == 1);
    }
  }
  return out;
}

size_t GroupSample::Label(size_t item) const {
  for (size_t l = 0; l < groups_; ++l) {
    if (Contains(item, l)) return l;
  }
  return groups_;
}

std::vector<size_t> GroupSample::GroupSizes() const {
  std::vector<size_t> sizes(groups_, 0);
  for (size_t i = 0; i < items_; ++i) {
    for (size_t l = 0; l < groups_; ++l) sizes[l] += Contains(i, l) ? 1 : 0;
  }
  return sizes;
}

Matrix GroupSample::AsMatrix() const {
  Matrix out(items_, groups_);
  for (size_t i = 0; i < items_; ++i) {
    for (size_t l = 0; l < groups_; ++l) out(i, l) = Contains(i, l) ? 1.0 : 0.0;
  }
  return out;
}

bool GroupSample::IsDisjointCover() const {
  for (size_t i = 0; i < items_; ++i) {
    size_t count = 0;
    for (size_t l = 0; l < groups_; ++l) count += Contains(i, l) ? 1 : 0;
    if (count != 1) return false;
  }
  return true;
}

Matrix DcgUtilities(std::span<const double> w, size_t n) {
  Matrix W(w.size(), n);
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < n; ++j) W(i, j) = w[i] / Log(static_cast<double>(j) + 2.0);
  }
  return W;
}

Instance MakeDcgInstance(std::vector<double> w, size_t n, Matrix P,
                         GroupStructure structure,
                         std::optional<GroupSample> truth) {
  Instance inst;
  inst.m = w.size();
  inst.n = n;
  inst.p = P.cols();
  inst.W = DcgUtilities(w, n);
  inst.w = std::move(w);
  inst.P = std::move(P);
  inst.structure = structure;
  inst.truth = std::move(truth);
  ValidateInstance(inst);
  return inst;
}

const Instance& ValidateInstance(const Instance& inst) {
  if (inst.m == 0 || inst.n == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "m and n must be positive");
  }
  if (inst.n > inst.m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "n=" + std::to_string(inst.n) + " exceeds m=" + std::to_string(inst.m));
  }
  if (inst.p < 1) {
    throw Error(ErrorCode::kDimensionMismatch, "p must be positive");
  }
  if (inst.W.rows() != inst.m || inst.W.cols() != inst.n) {
    throw Error(ErrorCode::kDimensionMismatch, "W must be m x n");
  }
  if (inst.P.rows() != inst.m || inst.P.cols() != inst.p) {
    throw Error(ErrorCode::kDimensionMismatch, "P must be m x p");
  }
  for (size_t i = 0; i < inst.m; ++i) {
    for (size_t j = 0; j < inst.n; ++j) {
      const double x = inst.W(i, j);
      if (!std::isfinite(x) || x < 0.0) {
        throw Error(ErrorCode::kNegativeUtility,
                    "W(" + std::to_string(i) + "," + std::to_string(j) +
                        ") is negative or not finite");
      }
    }
  }
  if (inst.w) {
    if (inst.w->size() != inst.m) {
      throw Error(ErrorCode::kDimensionMismatch, "w must have length m");
    }
    for (size_t i = 0; i < inst.m; ++i) {
      const double wi = (*inst.w)[i];
      if (!std::isfinite(wi) || wi < 0.0) {
        throw Error(ErrorCode::kNegativeUtility, "w has a negative entry");
      }
      for (size_t j = 0; j < inst.n; ++j) {
        const double expected = wi / Log(static_cast<double>(j) + 2.0);
        if (std::abs(inst.W(i, j) - expected) > 1e-12 * std::max(1.0, expected)) {
          throw Error(ErrorCode::kDimensionMismatch, "W inconsistent with w");
        }
      }
    }
  }
  for (size_t i = 0; i < inst.m; ++i) {
    for (size_t l = 0; l < inst.p; ++l) {
      const double x = inst.P(i, l);
      if (!(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::kProbabilityOutOfRange,
                    "P(" + std::to_string(i) + "," + std::to_string(l) +
                        ") outside [0,1]");
      }
    }
    if (inst.structure != GroupStructure::kIndependentMarginals &&
        std::abs(inst.P.RowSum(i) - 1.0) > 1e-9) {
      throw Error(ErrorCode::kRowSumViolation,
                  "row " + std::to_string(i) + " of P does not sum to 1");
    }
  }
  if (inst.truth) {
    if (inst.truth->items() != inst.m || inst.truth->groups() != inst.p) {
      throw Error(ErrorCode::kDimensionMismatch, "truth must be m x p");
    }
    if (inst.structure != GroupStructure::kIndependentMarginals &&
        !inst.truth->IsDisjointCover()) {
      throw Error(ErrorCode::kRowSumViolation,
                  "truth must assign every item to exactly one group");
    }
  }
  return inst;
}

bool IsValidRanking(const Ranking& r, size_t m, size_t n) {
  if (r.slots.size() != n) return false;
  std::vector<char> used(m, 0);
  for (size_t item : r.slots) {
    if (item >= m || used[item]) return false;
    used[item] = 1;
  }
  return true;
}

void CheckRanking(const Ranking& r, size_t m, size_t n) {
  if (r.slots.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ranking has " + std::to_string(r.slots.size()) + " slots, expected " +
                    std::to_string(n));
  }
  if (!IsValidRanking(r, m, n)) {
    throw Error(ErrorCode::kInvalidRanking, "ranking repeats an item or is out of range");
  }
}

Matrix RankingToMatrix(const Ranking& r, size_t m) {
  Matrix x(m, r.slots.size());
  for (size_t j = 0; j < r.slots.size(); ++j) x(r.slots[j], j) = 1.0;
  return x;
}

Ranking RankingFromMatrix(const Matrix& x) {
  Ranking r;
  r.slots.resize(x.cols());
  std::vector<char> used(x.rows(), 0);
  for (size_t j = 0; j < x.cols(); ++j) {
    size_t found = x.rows();
    for (size_t i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      if (v == 1.0) {
        if (found != x.rows()) {
          throw Error(ErrorCode::kInvalidRanking, "column with two ones");
        }
        found = i;
      } else if (v != 0.0) {
        throw Error(ErrorCode::kInvalidRanking, "non 0/1 entry");
      }
    }
    if (found == x.rows() || used[found]) {
      throw Error(ErrorCode::kInvalidRanking, "empty slot or repeated item");
    }
    used[found] = 1;
    r.slots[j] = found;
  }
  return r;
}

double Utility(const Ranking& r, const Matrix& W) {
  CheckRanking(r, W.rows(), W.cols());
  double total = 0.0;
  for (size_t j = 0; j < r.slots.size(); ++j) total += W(r.slots[j], j);
  return total;
}

bool IsFractionalAssignment(const Matrix& x) {
  for (size_t i = 0; i < x.rows(); ++i) {
    for (size_t j = 0; j < x.cols(); ++j) {
      const double v = x(i, j);
      if (!(v >= -kEntryTolerance && v <= 1.0 + kEntryTolerance)) return false;
    }
    if (x.RowSum(i) > 1.0 + kSumTolerance) return false;
  }
  for (size_t j = 0; j < x.cols(); ++j) {
    if (std::abs(x.ColSum(j) - 1.0) > kSumTolerance) return false;
  }
  return true;
}

void CheckFractionalAssignment(const Matrix& x) {
  if (!IsFractionalAssignment(x)) {
    throw Error(ErrorCode::kNotDecomposable,
                "matrix is not a fractional assignment within tolerance");
  }
}

std::string_view GammaModeName(GammaMode mode) {
  switch (mode) {
    case GammaMode::kTheoretical: return "theoretical";
    case GammaMode::kImproved: return "improved";
    case GammaMode::kPositionWeighted: return "position-weighted";
    case GammaMode::kHeuristic: return "heuristic";
    case GammaMode::kExplicit: return "explicit";
  }
  return "heuristic";
}

GammaMode ParseGammaMode(std::string_view name) {
  if (name == "theoretical") return GammaMode::kTheoretical;
  if (name == "improved") return GammaMode::kImproved;
  if (name == "position-weighted") return GammaMode::kPositionWeighted;
  if (name == "heuristic") return GammaMode::kHeuristic;
  if (name == "explicit") return GammaMode::kExplicit;
  throw Error(ErrorCode::kInvalidArgument, "unknown gamma mode '" + std::string(name) + "'");
}

void ValidateFairnessSpec(const FairnessSpec& spec, bool require_gamma) {
  const size_t n = spec.U.rows();
  for (size_t k = 0; k < n; ++k) {
    for (size_t l = 0; l < spec.U.cols(); ++l) {
      if (!(spec.U(k, l) >= 0.0) || !std::isfinite(spec.U(k, l))) {
        throw Error(ErrorCode::kInvalidArgument, "U entries must be finite and nonnegative");
      }
      if (k > 0 && spec.U(k, l) < spec.U(k - 1, l)) {
        throw Error(ErrorCode::kInvalidArgument, "U must be nondecreasing in k");
      }
    }
  }
  if (!(spec.c > 1.0)) throw Error(ErrorCode::kInvalidArgument, "c must exceed 1");
  if (!(spec.delta > 0.0 && spec.delta <= 0.5)) {
    throw Error(ErrorCode::kDeltaOutOfRange, "delta must lie in (0, 1/2]");
  }
  if (!(spec.d > 2.0)) throw Error(ErrorCode::kInvalidArgument, "d must exceed 2");
  if (require_gamma && spec.gamma.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "gamma must have length n");
  }
  for (double g : spec.gamma) {
    if (!(g >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be nonnegative");
  }
  if (!spec.v.empty()) {
    if (spec.v.size() != n) throw Error(ErrorCode::kDimensionMismatch, "v must have length n");
    for (size_t j = 0; j < spec.v.size(); ++j) {
      if (!(spec.v[j] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "v must be positive");
      if (j > 0 && spec.v[j] > spec.v[j - 1]) {
        throw Error(ErrorCode::kInvalidArgument, "v must be nonincreasing");
      }
    }
  }
}

Matrix ConvexCombination::ToMatrix(size_t m, size_t n) const {
  Matrix x(m, n);
  for (const auto& term : terms) {
    for (size_t j = 0; j < term.ranking.slots.size(); ++j) {
      x(term.ranking.slots[j], j) += term.weight;
    }
  }
  return x;
}

double ConvexCombination::TotalWeight() const {
  double total = 0.0;
  for (const auto& term : terms) total += term.weight;
  return total;
}

}  // namespace noisyfair
