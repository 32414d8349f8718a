// Copyright 2026 The ldpcsdp Authors.
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

#include "ldpcsdp/sdpcore.h"

#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

namespace ldpcsdp {
namespace {

// maximize t subject to the 1x1 block [1 - t] being PSD: x + t = 1.
SdpProblem ScalarBound() {
  SdpProblem problem(1, 1);
  const int row = problem.AddEquality(1.0);
  problem.AddMatrixCoefficient(row, 0, 0, 1.0);
  problem.AddFreeCoefficient(row, 0, 1.0);
  problem.SetObjective(0, 1.0);
  return problem;
}

// maximize b subject to [[1, b], [b, 1]] PSD.
SdpProblem TwoByTwoCorrelation() {
  SdpProblem problem(1, 2);
  int row = problem.AddEquality(1.0);
  problem.AddMatrixCoefficient(row, 0, 0, 1.0);
  row = problem.AddEquality(1.0);
  problem.AddMatrixCoefficient(row, 1, 1, 1.0);
  row = problem.AddEquality(0.0);
  problem.AddMatrixCoefficient(row, 0, 1, 1.0);
  problem.AddFreeCoefficient(row, 0, -1.0);
  problem.SetObjective(0, 1.0);
  return problem;
}

// x^2 + b x + 1 >= 0 on [0, 1] through (2 + b) t^4 + (b + 2) t^2 + 1 as a
// Gram form over {1, t, t^2}. `sense` = +1 maximizes b, -1 minimizes it.
SdpProblem QuadraticOnInterval(double sense) {
  SdpProblem problem(1, 3);
  const double constant[5] = {1.0, 0.0, 2.0, 0.0, 2.0};
  const double b_coeff[5] = {0.0, 0.0, 1.0, 0.0, 1.0};
  for (int l = 0; l <= 4; ++l) {
    const int row = problem.AddEquality(constant[l]);
    for (int i = 0; i <= 2; ++i) {
      const int j = l - i;
      if (j >= 0 && j <= 2) problem.AddMatrixCoefficient(row, i, j, 1.0);
    }
    if (b_coeff[l] != 0.0) problem.AddFreeCoefficient(row, 0, -b_coeff[l]);
  }
  problem.SetObjective(0, sense);
  return problem;
}

void ExpectFeasible(const SdpProblem& problem, const SdpSolution& sol) {
  double worst = 0.0;
  for (int r = 0; r < static_cast<int>(problem.equalities().size()); ++r) {
    worst = std::max(worst,
                     std::abs(problem.equalities()[r].rhs -
                              problem.RowActivity(r, sol.free_values,
                                                  sol.psd_matrix)));
  }
  EXPECT_LE(worst, 1e-8);
  EXPECT_LE(sol.primal_residual, 1e-8);
  EXPECT_LE(sol.dual_gap_estimate, 1e-7);
  EXPECT_GE(CheckPsd(sol.psd_matrix, 1e-9).min_eigenvalue, -1e-9);
}

TEST(SdpSolveTest, ScalarBound) {
  const SdpProblem problem = ScalarBound();
  const SdpSolution sol = Solve(problem);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.free_values[0], 1.0, 1e-7);
  // Dual bound: t <= 1 from the 1x1 block.
  EXPECT_LE(sol.objective_value, 1.0 + 1e-6);
  ExpectFeasible(problem, sol);
}

TEST(SdpSolveTest, TwoByTwoDeterminant) {
  const SdpProblem problem = TwoByTwoCorrelation();
  const SdpSolution sol = Solve(problem);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.free_values[0], 1.0, 1e-6);
  EXPECT_LE(sol.objective_value, 1.0 + 1e-6);
  ExpectFeasible(problem, sol);
}

TEST(SdpSolveTest, QuadraticMinimizationReachesPerfectSquare) {
  const SdpProblem problem = QuadraticOnInterval(-1.0);
  const SdpSolution sol = Solve(problem);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.free_values[0], -2.0, 1e-6);
  // (x - 1)^2 is the only certificate at b = -2: any b < -2 leaves f(1) < 0.
  EXPECT_GE(sol.free_values[0], -2.0 - 1e-6);
  ExpectFeasible(problem, sol);
}

TEST(SdpSolveTest, QuadraticMaximizationIsUnbounded) {
  const SdpSolution sol = Solve(QuadraticOnInterval(1.0));
  EXPECT_EQ(sol.status, SolveStatus::kUnbounded);
}

TEST(SdpSolveTest, InfeasibleProblemIsReported) {
  // X_00 = -1 with X PSD.
  SdpProblem problem(0, 1);
  const int row = problem.AddEquality(-1.0);
  problem.AddMatrixCoefficient(row, 0, 0, 1.0);
  const SdpSolution sol = Solve(problem);
  EXPECT_EQ(sol.status, SolveStatus::kInfeasible);
}

TEST(SdpSolveTest, DiagonalBlockSolvesLinearProgram) {
  // maximize x + 2y s.t. x + y <= 1, x, y in [0, 1] -> (0, 1), value 2.
  SdpProblem problem(2, 1, BlockStructure::kDiagonal);
  const int row = problem.AddEquality(1.0);
  problem.AddFreeCoefficient(row, 0, 1.0);
  problem.AddFreeCoefficient(row, 1, 1.0);
  problem.AddMatrixCoefficient(row, 0, 0, 1.0);
  problem.SetObjective(0, 1.0);
  problem.SetObjective(1, 2.0);
  problem.SetBounds(0, 0.0, 1.0);
  problem.SetBounds(1, 0.0, 1.0);
  const SdpSolution sol = Solve(problem);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.objective_value, 2.0, 1e-6);
  EXPECT_NEAR(sol.free_values[0], 0.0, 1e-6);
  EXPECT_NEAR(sol.free_values[1], 1.0, 1e-6);
  ASSERT_EQ(sol.psd_diagonal.size(), 1);
  EXPECT_EQ(sol.psd_matrix.size(), 0);
  EXPECT_NEAR(sol.psd_diagonal[0], 0.0, 1e-6);
}

TEST(SdpSolveTest, RowScalingDoesNotChangeResult) {
  SdpProblem problem = QuadraticOnInterval(-1.0);
  SdpProblem scaled = problem;
  for (int r = 0; r < static_cast<int>(scaled.equalities().size()); ++r) {
    scaled.ScaleRow(r, 1e3);
  }
  const SdpSolution a = Solve(problem);
  const SdpSolution b = Solve(scaled);
  EXPECT_EQ(a.status, b.status);
  EXPECT_NEAR(a.free_values[0], b.free_values[0], 1e-6);
}

TEST(SdpSolveTest, RepeatedSolvesAreIdentical) {
  const SdpProblem problem = QuadraticOnInterval(-1.0);
  const SdpSolution a = Solve(problem);
  const SdpSolution b = Solve(problem);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.free_values, b.free_values);
  EXPECT_TRUE(a.psd_matrix == b.psd_matrix);
}

TEST(SdpProblemTest, MalformedProblemsAreRejected) {
  SdpProblem problem(1, 2);
  const int row = problem.AddEquality(0.0);
  EXPECT_THROW(problem.AddFreeCoefficient(row, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(problem.AddMatrixCoefficient(row, 0, 2, 1.0),
               std::invalid_argument);
  EXPECT_THROW(problem.AddFreeCoefficient(7, 0, 1.0), std::invalid_argument);
  EXPECT_THROW(SdpProblem(1, 0), std::invalid_argument);

  SdpProblem diagonal(0, 2, BlockStructure::kDiagonal);
  const int drow = diagonal.AddEquality(1.0);
  EXPECT_THROW(diagonal.AddMatrixCoefficient(drow, 0, 1, 1.0),
               std::invalid_argument);

  SdpProblem bad_bounds(1, 1);
  bad_bounds.SetBounds(0, 1.0, 0.0);
  EXPECT_THROW(Solve(bad_bounds), std::invalid_argument);
}

TEST(SdpProblemTest, SymmetricEntriesShareOneVariable) {
  SdpProblem problem(0, 3);
  const int row = problem.AddEquality(0.0);
  problem.AddMatrixCoefficient(row, 0, 2, 1.0);
  problem.AddMatrixCoefficient(row, 2, 0, 1.0);
  problem.AddMatrixCoefficient(row, 1, 1, 1.0);
  const auto& terms = problem.equalities()[row].matrix_terms;
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms.at({0, 2}), 2.0);
  EXPECT_EQ(terms.at({1, 1}), 1.0);
}

TEST(SdpProblemTest, TextDumpListsEveryEquality) {
  std::ostringstream out;
  QuadraticOnInterval(-1.0).WriteText(out);
  const std::string text = out.str();
  EXPECT_NE(text.find("psd_dim=3"), std::string::npos);
  EXPECT_NE(text.find("m0,2:2"), std::string::npos);
  int lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_EQ(lines, 2 + 5);  // header, objective, five equalities
}

TEST(PsdCheckTest, Examples) {
  const PsdCheck identity = CheckPsd(Eigen::MatrixXd::Identity(3, 3), 1e-9);
  EXPECT_TRUE(identity.is_psd);
  EXPECT_NEAR(identity.min_eigenvalue, 1.0, 1e-14);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -0.5;
  const PsdCheck neg = CheckPsd(indefinite, 1e-9);
  EXPECT_FALSE(neg.is_psd);
  EXPECT_NEAR(neg.min_eigenvalue, -0.5, 1e-14);

  Eigen::MatrixXd rank_one(2, 2);
  rank_one << 1.0, 1.0, 1.0, 1.0;
  const PsdCheck r1 = CheckPsd(rank_one, 1e-9);
  EXPECT_TRUE(r1.is_psd);
  EXPECT_NEAR(r1.min_eigenvalue, 0.0, 1e-14);

  Eigen::MatrixXd asym(2, 2);
  asym << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(CheckPsd(asym, 1e-9), std::invalid_argument);
}

}  // namespace
}  // namespace ldpcsdp
