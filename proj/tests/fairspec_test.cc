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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "noisyfair/status.h"

namespace noisyfair {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

std::vector<double> Column(const Matrix& U, size_t l) {
  std::vector<double> col(U.rows());
  for (size_t k = 0; k < U.rows(); ++k) col[k] = U(k, l);
  return col;
}

TEST(UpperBoundsTest, EqualRepresentation) {
  const Matrix U = UEqualRepresentation(3, 2);
  EXPECT_EQ(Column(U, 0), (std::vector<double>{1, 1, 2}));
  EXPECT_EQ(Column(U, 1), (std::vector<double>{1, 1, 2}));
  EXPECT_EQ(UEqualRepresentation(1, 2)(0, 1), 1.0);
  EXPECT_EQ(Column(UEqualRepresentation(4, 4), 3), (std::vector<double>{1, 1, 1, 1}));
}

TEST(UpperBoundsTest, Proportional) {
  const std::vector<size_t> halves = {1, 1};
  const Matrix even = UProportional(2, halves, 2);
  for (size_t k = 0; k < 2; ++k) {
    for (size_t l = 0; l < 2; ++l) EXPECT_EQ(even(k, l), 1.0);
  }
  const std::vector<size_t> sizes = {3, 2};
  EXPECT_EQ(Column(UProportional(5, sizes, 5), 0), (std::vector<double>{1, 2, 2, 3, 3}));
  const std::vector<size_t> empty_group = {10, 0};
  EXPECT_EQ(CodeOf([&] { UProportional(1, empty_group, 10); }), ErrorCode::kZeroGroupSize);
}

TEST(UpperBoundsTest, PhiParameterized) {
  const Matrix loose = UPhi(5, 2, 2.0);
  for (size_t k = 0; k < 5; ++k) EXPECT_EQ(loose(k, 0), static_cast<double>(k + 1));
  EXPECT_EQ(UPhi(5, 2, 1.0)(4, 1), 3.0);
  EXPECT_NO_THROW(UPhi(5, 2, 1.11));
  EXPECT_EQ(CodeOf([] { UPhi(5, 2, 0.9); }), ErrorCode::kPhiOutOfRange);
  EXPECT_EQ(CodeOf([] { UPhi(5, 2, 2.5); }), ErrorCode::kPhiOutOfRange);
}

TEST(GammaTest, TheoreticalAtFirstPosition) {
  const std::vector<double> gamma = GammaTheoretical(UEqualRepresentation(25, 2), 0.1);
  ASSERT_EQ(gamma.size(), 25u);
  EXPECT_NEAR(gamma[0], 12.0 * std::log(1000.0), 1e-9);
  EXPECT_NEAR(gamma[0], 82.893, 1e-3);
}

TEST(GammaTest, DoublingBoundsDividesBySqrtTwo) {
  const Matrix U = UEqualRepresentation(10, 2);
  Matrix doubled = U;
  for (size_t k = 0; k < U.rows(); ++k) {
    for (size_t l = 0; l < U.cols(); ++l) doubled(k, l) *= 2.0;
  }
  const std::vector<double> a = GammaTheoretical(U, 0.1);
  const std::vector<double> b = GammaTheoretical(doubled, 0.1);
  for (size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k], a[k] / std::sqrt(2.0), 1e-12);
}

TEST(GammaTest, Improved) {
  const Matrix U = UEqualRepresentation(25, 2);
  EXPECT_NEAR(GammaImproved(U, 0.5, 0.1)[0], std::sqrt(std::log(1000.0)), 1e-12);
  EXPECT_NEAR(GammaImproved(U, 0.5, 0.1)[0], 2.628, 1e-3);
  EXPECT_EQ(CodeOf([&] { GammaImproved(U, 1.0, 0.1); }), ErrorCode::kPsiAssumptionViolated);
}

TEST(GammaTest, PositionWeighted) {
  const Matrix U = UEqualRepresentation(25, 2);
  const std::vector<double> theory = GammaTheoretical(U, 0.1);
  const std::vector<double> weighted = GammaPositionWeighted(U, 0.5, 0.1);
  for (size_t k = 0; k < theory.size(); ++k) {
    EXPECT_NEAR(weighted[k], theory[k] / (12.0 * 0.5), 1e-12);
  }
  const Matrix unconstrained = UPhi(2, 2, 2.0);
  EXPECT_NEAR(GammaPositionWeighted(unconstrained, 1.0, 0.5)[0], std::log(16.0), 1e-12);
  EXPECT_NEAR(GammaPositionWeighted(unconstrained, 1.0, 0.5)[0], 2.773, 1e-3);
}

TEST(GammaTest, DeltaRange) {
  const Matrix U = UEqualRepresentation(4, 2);
  EXPECT_NO_THROW(GammaTheoretical(U, 0.5));
  EXPECT_EQ(CodeOf([&] { GammaTheoretical(U, 0.0); }), ErrorCode::kDeltaOutOfRange);
  EXPECT_EQ(CodeOf([&] { GammaTheoretical(U, 0.51); }), ErrorCode::kDeltaOutOfRange);
}

TEST(GammaTest, Heuristic) {
  const std::vector<double> gamma = GammaHeuristic(UEqualRepresentation(8, 2));
  EXPECT_NEAR(gamma[7], 0.025, 1e-12);
  EXPECT_NEAR(gamma[0], 0.05, 1e-12);
}

TEST(GammaTest, MonotoneInBoundsAndConfidence) {
  const Matrix U = UEqualRepresentation(12, 3);
  const Matrix looser = UPhi(12, 3, 2.0);
  for (auto f : std::vector<std::function<std::vector<double>(const Matrix&, double)>>{
           [](const Matrix& u, double d) { return GammaTheoretical(u, d); },
           [](const Matrix& u, double d) { return GammaPositionWeighted(u, 0.3, d); },
           [](const Matrix& u, double d) { return GammaImproved(u, 0.3, d); }}) {
    const std::vector<double> base = f(U, 0.1);
    const std::vector<double> loose = f(looser, 0.1);
    const std::vector<double> confident = f(U, 0.01);
    for (size_t k = 0; k < base.size(); ++k) {
      EXPECT_LE(loose[k], base[k] + 1e-12);
      EXPECT_GE(confident[k], base[k] - 1e-12);
    }
  }
  const std::vector<double> big = GammaHeuristic(UPhi(400, 2, 2.0));
  EXPECT_LT(big.back(), 0.0026);
}

TEST(RelaxationFactorTest, Limits) {
  EXPECT_DOUBLE_EQ(RelaxationFactor(0.0, 7.0), 1.0);
  EXPECT_DOUBLE_EQ(RelaxationFactor(0.4, 1.0), 1.2);
  EXPECT_NEAR(RelaxationFactor(0.4, 1e12), 1.4, 1e-6);
}

TEST(ConstraintsTest, SingleSlotSingleGroup) {
  FairnessSpec spec;
  spec.U = Matrix::FromRows({{1}});
  spec.gamma_mode = GammaMode::kExplicit;
  spec.gamma = {0.0};
  const auto constraints = BuildConstraints(Matrix::FromRows({{1}, {0}}), spec);
  ASSERT_EQ(constraints.size(), 1u);
  EXPECT_DOUBLE_EQ(constraints[0].bound, 1.0);
  double coeff_item0 = 0.0;
  for (const auto& e : constraints[0].entries) {
    if (e.item == 0 && e.slot == 0) coeff_item0 += e.value;
    else EXPECT_EQ(e.value, 0.0);
  }
  EXPECT_DOUBLE_EQ(coeff_item0, 1.0);
}

TEST(ConstraintsTest, PrefixStructureAndRelaxedBound) {
  FairnessSpec spec;
  spec.U = UEqualRepresentation(3, 2);
  spec.gamma_mode = GammaMode::kExplicit;
  spec.gamma = {0.5, 0.5, 0.5};
  spec.c = 4.0;
  const Matrix P = Matrix::FromRows({{0.2, 0.8}, {0.5, 0.5}, {1.0, 0.0}, {0.0, 1.0}});
  const auto constraints = BuildConstraints(P, spec);
  ASSERT_EQ(constraints.size(), 6u);
  for (const auto& c : constraints) {
    EXPECT_NEAR(c.bound, spec.U(c.k, c.group) * (1.0 + 0.75 * 0.5), 1e-12);
    for (const auto& e : c.entries) {
      EXPECT_LE(e.slot, c.k);
      EXPECT_DOUBLE_EQ(e.value, P(e.item, c.group));
    }
  }
  EXPECT_EQ(constraints[1].k, 0u);
  EXPECT_EQ(constraints[1].group, 1u);
}

}  // namespace
}  // namespace noisyfair
