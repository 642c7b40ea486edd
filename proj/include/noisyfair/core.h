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

// Domain types shared by every module: instances, rankings, fractional
// assignments, fairness specifications, group samples and convex
// combinations of rankings.
//
// Indices are 0-based throughout the library. File formats and CLI output
// convert to 1-based.

#ifndef NOISYFAIR_CORE_H_
#define NOISYFAIR_CORE_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace noisyfair {

// The single logarithm used for DCG discounts, metric weights and all gamma
// formulas. Natural log; swap here to change the base everywhere.
inline double Log(double x) { return std::log(x); }

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  double operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<std::vector<double>> ToRows() const;
  double RowSum(size_t i) const;
  double ColSum(size_t j) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

enum class GroupStructure {
  // Each item belongs to exactly one group; rows of P are categorical.
  kDisjoint,
  // Each attribute is an independent Bernoulli with the given marginal.
  kIndependentMarginals,
  // Columns of P are cells of an explicit joint (product) distribution;
  // rows are categorical over cells.
  kExplicitJoint,
};

std::string_view GroupStructureName(GroupStructure s);
GroupStructure ParseGroupStructure(std::string_view name);

// A realized membership: membership(i, l) is true iff item i is in G_l.
class GroupSample {
 public:
  GroupSample() = default;
  GroupSample(size_t items, size_t groups)
      : items_(items), groups_(groups), bits_(items * groups, 0) {}
  // One label per item (disjoint groups).
  static GroupSample FromLabels(std::span<const size_t> labels, size_t groups);
  static GroupSample FromRows(const std::vector<std::vector<int>>& rows);

  size_t items() const { return items_; }
  size_t groups() const { return groups_; }
  bool Contains(size_t item, size_t group) const {
    return bits_[item * groups_ + group] != 0;
  }
  void Set(size_t item, size_t group, bool value) {
    bits_[item * groups_ + group] = value ? 1 : 0;
  }
  // First group the item belongs to, or groups() if none.
  size_t Label(size_t item) const;
  std::vector<size_t> GroupSizes() const;
  // The 0/1 membership as a probability matrix (used by SJ).
  Matrix AsMatrix() const;
  bool IsDisjointCover() const;

  friend bool operator==(const GroupSample&, const GroupSample&) = default;

 private:
  size_t items_ = 0;
  size_t groups_ = 0;
  std::vector<uint8_t> bits_;
};

struct Instance {
  size_t m = 0;  // items
  size_t n = 0;  // slots
  size_t p = 0;  // groups
  Matrix W;      // m x n utilities
  // Intrinsic values; when present W(i, j) = w[i] / Log(j + 2).
  std::optional<std::vector<double>> w;
  Matrix P;  // m x p membership probabilities
  GroupStructure structure = GroupStructure::kDisjoint;
  std::optional<GroupSample> truth;
};

// Builds the DCG utility matrix W(i, j) = w[i] / log(j + 2) (0-based j).
Matrix DcgUtilities(std::span<const double> w, size_t n);

// Assembles an instance from intrinsic values (W derived) and validates it.
Instance MakeDcgInstance(std::vector<double> w, size_t n, Matrix P,
                         GroupStructure structure,
                         std::optional<GroupSample> truth = std::nullopt);

// Throws Error on any invariant violation; returns the instance unchanged.
const Instance& ValidateInstance(const Instance& inst);

// slots[j] is the item placed at slot j. All items distinct, all slots filled.
struct Ranking {
  std::vector<size_t> slots;

  size_t size() const { return slots.size(); }
  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking&, const Ranking&) = default;
};

bool IsValidRanking(const Ranking& r, size_t m, size_t n);
void CheckRanking(const Ranking& r, size_t m, size_t n);
Matrix RankingToMatrix(const Ranking& r, size_t m);
// Inverse of RankingToMatrix; throws kInvalidRanking for non-permutation
// matrices.
Ranking RankingFromMatrix(const Matrix& x);

// sum_j W(slots[j], j).
double Utility(const Ranking& r, const Matrix& W);

// Fractional assignment tolerances.
inline constexpr double kEntryTolerance = 1e-9;
inline constexpr double kSumTolerance = 1e-7;

bool IsFractionalAssignment(const Matrix& x);
void CheckFractionalAssignment(const Matrix& x);

enum class GammaMode {
  kTheoretical,
  kImproved,
  kPositionWeighted,
  kHeuristic,
  kExplicit,
};

std::string_view GammaModeName(GammaMode mode);
GammaMode ParseGammaMode(std::string_view name);

struct FairnessSpec {
  Matrix U;  // n x p upper bounds (integral values)
  GammaMode gamma_mode = GammaMode::kHeuristic;
  double psi = 0.5;                  // improved / position-weighted modes
  std::vector<double> gamma;         // length n once populated
  double c = 1.5;                    // > 1
  double delta = 0.1;                // in (0, 1/2]
  double d = 3.0;                    // rounding parameter, > 2
  double gamma_constant = 12.0;      // leading constant of the theoretical mode
  std::vector<double> v;             // optional position discounts
};

void ValidateFairnessSpec(const FairnessSpec& spec, bool require_gamma);

struct WeightedRanking {
  double weight = 0.0;
  Ranking ranking;
};

struct ConvexCombination {
  std::vector<WeightedRanking> terms;

  // sum_t weight_t * matrix(ranking_t).
  Matrix ToMatrix(size_t m, size_t n) const;
  double TotalWeight() const;
};

}  // namespace noisyfair

#endif  // NOISYFAIR_CORE_H_
