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

#include "noisyfair/decompose.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

constexpr double kZero = 1e-9;

// Kuhn's augmenting paths on the support of a square matrix. Keeps the
// previous matching and only repairs rows that lost their edge.
class SupportMatcher {
 public:
  explicit SupportMatcher(const std::vector<double>& y, size_t size)
      : y_(y), size_(size), row_to_col_(size, size), col_to_row_(size, size) {}

  // Drops matched edges whose entry vanished, then re-augments. Returns
  // false if no perfect matching exists on the current support.
  bool Repair() {
    for (size_t r = 0; r < size_; ++r) {
      const size_t c = row_to_col_[r];
      if (c != size_ && y_[r * size_ + c] <= 0.0) {
        row_to_col_[r] = size_;
        col_to_row_[c] = size_;
      }
    }
    for (size_t r = 0; r < size_; ++r) {
      if (row_to_col_[r] != size_) continue;
      visited_.assign(size_, 0);
      if (!Augment(r)) return false;
    }
    return true;
  }

  const std::vector<size_t>& row_to_col() const { return row_to_col_; }
  const std::vector<size_t>& col_to_row() const { return col_to_row_; }

 private:
  bool Augment(size_t root) {
    // Iterative DFS to stay safe on large supports.
    struct Frame {
      size_t row;
      size_t next_col;
    };
    std::vector<Frame> stack{{root, 0}};
    std::vector<size_t> via(size_, size_);  // column chosen at each frame
    while (!stack.empty()) {
      Frame& f = stack.back();
      bool pushed = false;
      while (f.next_col < size_) {
        const size_t c = f.next_col++;
        if (visited_[c] || y_[f.row * size_ + c] <= 0.0) continue;
        visited_[c] = 1;
        const size_t owner = col_to_row_[c];
        via[stack.size() - 1] = c;
        if (owner == size_) {
          // Flip the alternating path recorded on the stack.
          for (size_t d = 0; d < stack.size(); ++d) {
            const size_t row = stack[d].row;
            const size_t col = via[d];
            row_to_col_[row] = col;
            col_to_row_[col] = row;
          }
          return true;
        }
        stack.push_back({owner, 0});
        pushed = true;
        break;
      }
      if (!pushed) stack.pop_back();
    }
    return false;
  }

  const std::vector<double>& y_;
  size_t size_;
  std::vector<size_t> row_to_col_;
  std::vector<size_t> col_to_row_;
  std::vector<char> visited_;
};

}  // namespace

ConvexCombination BvnDecompose(const Matrix& X) {
  if (!IsFractionalAssignment(X)) {
    throw Error(ErrorCode::kNotDecomposable, "input is not a fractional assignment");
  }
  const size_t n = X.cols();
  std::vector<size_t> items;
  for (size_t i = 0; i < X.rows(); ++i) {
    if (X.RowSum(i) > kZero) items.push_back(i);
  }
  const size_t size = items.size();
  if (size < n) throw Error(ErrorCode::kNotDecomposable, "fewer supported items than slots");

  std::vector<double> y(size * size, 0.0);
  std::vector<double> slack(size, 0.0);
  for (size_t r = 0; r < size; ++r) {
    double row = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const double v = X(items[r], j) > kZero ? X(items[r], j) : 0.0;
      y[r * size + j] = v;
      row += v;
    }
    slack[r] = std::max(0.0, 1.0 - row);
  }
  // Northwest-corner fill of the dummy slots.
  size_t r = 0;
  for (size_t c = n; c < size; ++c) {
    double capacity = 1.0;
    while (r < size && capacity > kZero) {
      const double take = std::min(capacity, slack[r]);
      if (take > kZero) y[r * size + c] += take;
      capacity -= take;
      slack[r] -= take;
      if (slack[r] <= kZero) ++r;
    }
  }

  std::map<Ranking, double> weights;
  SupportMatcher matcher(y, size);
  double mass = 0.0;
  while (mass < 1.0 - kZero && matcher.Repair()) {
    const auto& row_to_col = matcher.row_to_col();
    double theta = 1.0;
    for (size_t q = 0; q < size; ++q) theta = std::min(theta, y[q * size + row_to_col[q]]);
    for (size_t q = 0; q < size; ++q) {
      double& cell = y[q * size + row_to_col[q]];
      cell -= theta;
      if (cell < kZero) cell = 0.0;
    }
    Ranking ranking;
    ranking.slots.resize(n);
    const auto& col_to_row = matcher.col_to_row();
    for (size_t j = 0; j < n; ++j) ranking.slots[j] = items[col_to_row[j]];
    weights[ranking] += theta;
    mass += theta;
  }

  ConvexCombination out;
  for (const auto& [ranking, w] : weights) out.terms.push_back({w, ranking});
  if (out.terms.empty()) throw Error(ErrorCode::kNotDecomposable, "no perfect matching");
  for (auto& term : out.terms) term.weight /= mass;
  std::stable_sort(out.terms.begin(), out.terms.end(),
                   [](const WeightedRanking& a, const WeightedRanking& b) {
                     return a.weight > b.weight;
                   });
  const Matrix rebuilt = out.ToMatrix(X.rows(), n);
  double err = 0.0;
  for (size_t i = 0; i < X.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) err = std::max(err, std::abs(rebuilt(i, j) - X(i, j)));
  }
  if (err > kSumTolerance) {
    throw Error(ErrorCode::kNotDecomposable,
                "reconstruction error " + std::to_string(err) + " exceeds tolerance");
  }
  return out;
}

}  // namespace noisyfair
