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

#include "noisyfair/lpsolve.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "noisyfair/fairspec.h"
#include "noisyfair/noiselab.h"
#include "noisyfair/rankers.h"
#include "noisyfair/rng.h"
#include "noisyfair/simplex.h"
#include "noisyfair/status.h"

namespace noisyfair {
namespace {

LpRow Row(std::vector<std::pair<size_t, double>> entries, RowSense sense, double rhs) {
  return LpRow{std::move(entries), sense, rhs};
}

TEST(SimplexTest, SmallMaximization) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {3, 2};
  lp.rows = {Row({{0, 1}, {1, 1}}, RowSense::kLessEqual, 4),
             Row({{0, 1}, {1, 3}}, RowSense::kLessEqual, 7),
             Row({{0, 1}}, RowSense::kLessEqual, 3)};
  const SimplexResult r = SolveSimplex(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 11.0, 1e-9);
  EXPECT_NEAR(r.x[0], 3.0, 1e-9);
  EXPECT_NEAR(r.x[1], 1.0, 1e-9);
  EXPECT_NEAR(r.duals[0], 2.0, 1e-9);
  EXPECT_NEAR(r.duals[1], 0.0, 1e-9);
  EXPECT_NEAR(r.duals[2], 1.0, 1e-9);
}

TEST(SimplexTest, EqualityAndGreaterEqualRows) {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {-1, -2};
  lp.rows = {Row({{0, 1}, {1, 1}}, RowSense::kEqual, 2),
             Row({{1, 1}}, RowSense::kGreaterEqual, 0.5)};
  const SimplexResult r = SolveSimplex(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -2.5, 1e-9);
  EXPECT_NEAR(r.x[1], 0.5, 1e-9);
  // Strong duality in the caller's orientation.
  EXPECT_NEAR(2 * r.duals[0] + 0.5 * r.duals[1], r.objective, 1e-9);
}

TEST(SimplexTest, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1};
  infeasible.rows = {Row({{0, 1}}, RowSense::kGreaterEqual, 2),
                     Row({{0, 1}}, RowSense::kLessEqual, 1)};
  EXPECT_EQ(SolveSimplex(infeasible).status, LpStatus::kInfeasible);

  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {1, 0};
  unbounded.rows = {Row({{0, 1}, {1, -1}}, RowSense::kLessEqual, 1)};
  EXPECT_EQ(SolveSimplex(unbounded).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, TerminatesOnBealeCyclingExample) {
  LinearProgram lp;
  lp.num_vars = 4;
  lp.objective = {0.75, -20, 0.5, -6};
  lp.rows = {Row({{0, 0.25}, {1, -8}, {2, -1}, {3, 9}}, RowSense::kLessEqual, 0),
             Row({{0, 0.5}, {1, -12}, {2, -0.5}, {3, 3}}, RowSense::kLessEqual, 0),
             Row({{2, 1}}, RowSense::kLessEqual, 1)};
  const SimplexResult r = SolveSimplex(lp);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1.25, 1e-9);
}

TEST(SimplexTest, RefactorizationKeepsAccuracy) {
  // A transportation problem large enough to cross several refactor points.
  const size_t s = 12;
  LinearProgram lp;
  lp.num_vars = s * s;
  lp.objective.resize(s * s);
  Rng rng(3);
  for (double& c : lp.objective) c = rng.Uniform();
  for (size_t i = 0; i < s; ++i) {
    LpRow row, col;
    for (size_t j = 0; j < s; ++j) {
      row.entries.push_back({i * s + j, 1.0});
      col.entries.push_back({j * s + i, 1.0});
    }
    row.sense = col.sense = RowSense::kEqual;
    row.rhs = col.rhs = 1.0;
    lp.rows.push_back(row);
    lp.rows.push_back(col);
  }
  SimplexOptions tight;
  tight.refactor_interval = 3;
  const SimplexResult a = SolveSimplex(lp);
  const SimplexResult b = SolveSimplex(lp, tight);
  ASSERT_EQ(a.status, LpStatus::kOptimal);
  ASSERT_EQ(b.status, LpStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-9);
}

Instance RandomInstance(size_t m, size_t n, size_t p, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(m);
  for (double& x : w) x = rng.Uniform();
  Matrix P(m, p);
  for (size_t i = 0; i < m; ++i) {
    double total = 0.0;
    for (size_t l = 0; l < p; ++l) total += (P(i, l) = rng.Uniform() + 0.05);
    for (size_t l = 0; l < p; ++l) P(i, l) /= total;
  }
  return MakeDcgInstance(std::move(w), n, std::move(P), GroupStructure::kDisjoint);
}

FairnessSpec TightSpec(size_t n, size_t p) {
  FairnessSpec spec;
  spec.U = UEqualRepresentation(n, p);
  spec.gamma_mode = GammaMode::kExplicit;
  spec.gamma.assign(n, 0.0);
  return spec;
}

TEST(RelaxationTest, SingleCell) {
  const Instance inst =
      MakeDcgInstance({1.0 / DcgUtilities(std::vector<double>{1.0}, 1)(0, 0)}, 1,
                      Matrix::FromRows({{1.0}}), GroupStructure::kDisjoint);
  const LpSolution sol = SolveRelaxation(inst, {});
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.assignment(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
}

TEST(RelaxationTest, ContradictoryBoundsAreInfeasible) {
  const Instance inst = MakeDcgInstance({1.0, 1.0}, 1, Matrix::FromRows({{1.0}, {1.0}}),
                                        GroupStructure::kDisjoint);
  FairnessSpec spec;
  spec.U = Matrix::FromRows({{0.0}});
  spec.gamma_mode = GammaMode::kExplicit;
  spec.gamma = {0.0};
  EXPECT_EQ(SolveRelaxation(inst, BuildConstraints(inst.P, spec)).status,
            LpStatus::kInfeasible);
}

TEST(RelaxationTest, FeasibleAssignmentWithinTolerance) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = RandomInstance(40, 8, 3, seed);
    const auto constraints = BuildConstraints(inst.P, TightSpec(8, 3));
    const LpSolution sol = SolveRelaxation(inst, constraints);
    ASSERT_EQ(sol.status, LpStatus::kOptimal);
    EXPECT_TRUE(IsFractionalAssignment(sol.assignment));
    EXPECT_LE(MaxConstraintViolation(sol.assignment, constraints), 1e-7);
  }
}

TEST(RelaxationTest, ColumnGenerationMatchesFullSolve) {
  RelaxationOptions full;
  full.initial_items_per_slot = 0;
  RelaxationOptions narrow;
  narrow.initial_items_per_slot = 1;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = RandomInstance(60, 6, 2, 100 + seed);
    const auto constraints = BuildConstraints(inst.P, TightSpec(6, 2));
    const LpSolution a = SolveRelaxation(inst, constraints, full);
    const LpSolution b = SolveRelaxation(inst, constraints);
    const LpSolution c = SolveRelaxation(inst, constraints, narrow);
    ASSERT_EQ(a.status, LpStatus::kOptimal);
    EXPECT_NEAR(a.objective, b.objective, 1e-7);
    EXPECT_NEAR(a.objective, c.objective, 1e-7);
  }
}

// Independent exhaustive enumeration over ordered n-subsets in expected mode.
double EnumerateBest(const Instance& inst, const std::vector<LinearConstraint>& constraints) {
  double best = -1.0;
  std::vector<size_t> items(inst.m);
  std::iota(items.begin(), items.end(), 0);
  do {
    const Ranking r{{items.begin(), items.begin() + inst.n}};
    if (MaxConstraintViolation(RankingToMatrix(r, inst.m), constraints) <= 1e-9) {
      best = std::max(best, Utility(r, inst.W));
    }
  } while (std::next_permutation(items.begin(), items.end()));
  return best;
}

TEST(BruteForceTest, SingleCell) {
  const Instance inst = MakeDcgInstance({2.0}, 1, Matrix::FromRows({{0.3, 0.7}}),
                                        GroupStructure::kDisjoint);
  const auto r = BruteForceOptimal(inst, TightSpec(1, 2));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->slots, (std::vector<size_t>{0}));
}

TEST(BruteForceTest, SlackConstraintsReduceToSorting) {
  const Instance inst = MakeDcgInstance({1.0, 3.0, 2.0}, 2, Matrix(3, 2, 0.5),
                                        GroupStructure::kDisjoint);
  FairnessSpec spec = TightSpec(2, 2);
  spec.U = UPhi(2, 2, 2.0);
  EXPECT_EQ(*BruteForceOptimal(inst, spec), Uncons(inst));
}

TEST(BruteForceTest, MatchesIndependentEnumeration) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = RandomInstance(4, 2, 2, 7 + seed);
    const FairnessSpec spec = TightSpec(2, 2);
    const auto constraints = BuildConstraints(inst.P, spec);
    const auto r = BruteForceOptimal(inst, spec);
    const double best = EnumerateBest(inst, constraints);
    if (best < 0.0) {
      EXPECT_FALSE(r.has_value());
      continue;
    }
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(Utility(*r, inst.W), best, 1e-12);
    const LpSolution lp = SolveRelaxation(inst, constraints);
    ASSERT_EQ(lp.status, LpStatus::kOptimal);
    EXPECT_GE(lp.objective, best - 1e-9);
  }
}

TEST(BruteForceTest, RejectsLargeInstances) {
  const Instance inst = RandomInstance(9, 2, 2, 1);
  try {
    BruteForceOptimal(inst, TightSpec(2, 2));
    FAIL() << "expected TooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(BruteForceTest, EpsilonDeltaModeAdmitsWhatExpectedModeAdmits) {
  const Instance inst = HalfHalfInstance(4, 2);
  BruteForceMode mode;
  mode.kind = BruteForceMode::Kind::kEpsilonDelta;
  mode.epsilon = {1.0, 1.0};  // U (1 + 1) = 2 per prefix: never violated at n = 2
  mode.delta = 0.0;
  mode.trials = 200;
  EXPECT_TRUE(BruteForceOptimal(inst, TightSpec(2, 2), mode).has_value());
  mode.epsilon = {0.0, 0.0};
  mode.delta = 0.1;  // the first two items share a group half the time
  EXPECT_FALSE(BruteForceOptimal(inst, TightSpec(2, 2), mode).has_value());
}

}  // namespace
}  // namespace noisyfair
