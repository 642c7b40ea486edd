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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "noisyfair/fairspec.h"
#include "noisyfair/lpsolve.h"
#include "noisyfair/rng.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

void ExpectReconstructs(const Matrix& x, const ConvexCombination& comb) {
  EXPECT_LE(MaxAbsDiff(comb.ToMatrix(x.rows(), x.cols()), x), 1e-7);
  EXPECT_NEAR(comb.TotalWeight(), 1.0, 1e-9);
  for (const auto& term : comb.terms) {
    EXPECT_GT(term.weight, 0.0);
    EXPECT_TRUE(IsValidRanking(term.ranking, x.rows(), x.cols()));
  }
}

TEST(BvnTest, IntegralInputGivesOneTerm) {
  const Ranking r{{2, 0}};
  const ConvexCombination comb = BvnDecompose(RankingToMatrix(r, 3));
  ASSERT_EQ(comb.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(comb.terms[0].weight, 1.0);
  EXPECT_EQ(comb.terms[0].ranking, r);
}

TEST(BvnTest, UniformTwoByTwo) {
  const Matrix x = Matrix::FromRows({{0.5, 0.5}, {0.5, 0.5}});
  const ConvexCombination comb = BvnDecompose(x);
  ASSERT_EQ(comb.terms.size(), 2u);
  EXPECT_NEAR(comb.terms[0].weight, 0.5, 1e-12);
  EXPECT_NEAR(comb.terms[1].weight, 0.5, 1e-12);
  EXPECT_NE(comb.terms[0].ranking, comb.terms[1].ranking);
  ExpectReconstructs(x, comb);
}

TEST(BvnTest, RectangularInput) {
  const Matrix x = Matrix::FromRows({{0.5, 0.25}, {0.5, 0.25}, {0.0, 0.5}});
  ExpectReconstructs(x, BvnDecompose(x));
}

TEST(BvnTest, TermsSortedByWeight) {
  const Matrix x = Matrix::FromRows({{0.7, 0.3}, {0.3, 0.7}});
  const ConvexCombination comb = BvnDecompose(x);
  ASSERT_EQ(comb.terms.size(), 2u);
  EXPECT_NEAR(comb.terms[0].weight, 0.7, 1e-12);
  EXPECT_EQ(comb.terms[0].ranking, (Ranking{{0, 1}}));
}

TEST(BvnTest, LpSolutionsReconstruct) {
  for (uint64_t seed = 0; seed < 15; ++seed) {
    Rng rng(seed);
    const size_t m = 20 + rng.UniformIndex(20);
    const size_t n = 3 + rng.UniformIndex(6);
    std::vector<double> w(m);
    for (double& v : w) v = rng.Uniform();
    Matrix P(m, 2);
    for (size_t i = 0; i < m; ++i) {
      P(i, 0) = rng.Uniform();
      P(i, 1) = 1.0 - P(i, 0);
    }
    const Instance inst = MakeDcgInstance(std::move(w), n, std::move(P),
                                          GroupStructure::kDisjoint);
    FairnessSpec spec;
    spec.U = UEqualRepresentation(n, 2);
    spec.gamma_mode = GammaMode::kExplicit;
    spec.gamma.assign(n, 0.0);
    const LpSolution lp = SolveRelaxation(inst, BuildConstraints(inst.P, spec));
    ASSERT_EQ(lp.status, LpStatus::kOptimal);
    ExpectReconstructs(lp.assignment, BvnDecompose(lp.assignment));
  }
}

TEST(BvnTest, RejectsNonAssignment) {
  try {
    BvnDecompose(Matrix::FromRows({{0.5}, {0.2}}));
    FAIL() << "expected NotDecomposable";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotDecomposable);
  }
}

}  // namespace
}  // namespace noisyfair
