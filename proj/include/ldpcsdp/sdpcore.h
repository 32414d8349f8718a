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

// A small dense semidefinite programming solver for problems of the form
//
//   maximize    c^T u
//   subject to  F_r^T u + <A_r, X> = b_r     for each equality row r
//               lower <= u <= upper          (optional, per free variable)
//               X symmetric positive semidefinite (one block)
//
// where u are free scalar variables. The block may be declared diagonal, in
// which case the problem is a linear program over its diagonal entries.
//
// The method is an infeasible primal-dual path-following interior-point
// method with Nesterov-Todd scaling and Mehrotra predictor-corrector steps.
// Free variables enter the Newton system directly through a bordered Schur
// complement; box bounds become nonnegative slack variables.

#ifndef LDPCSDP_SDPCORE_H_
#define LDPCSDP_SDPCORE_H_

#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace ldpcsdp {

enum class BlockStructure { kDense, kDiagonal };

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kMaxIterations,
  kNumericalFailure,
};

std::string ToString(SolveStatus status);

struct Bounds {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

// One equality row. Matrix coefficients are keyed by (i, j) with i <= j; the
// value multiplies the single shared entry X_ij = X_ji, so an anti-diagonal
// sum over ordered pairs carries coefficient 2 off the diagonal.
struct EqualityRow {
  std::map<int, double> free_terms;
  std::map<std::pair<int, int>, double> matrix_terms;
  double rhs = 0.0;
};

class SdpProblem {
 public:
  SdpProblem(int num_free, int psd_dim,
             BlockStructure structure = BlockStructure::kDense);

  // Appends an equality row with the given right-hand side; returns its index.
  int AddEquality(double rhs);
  void AddFreeCoefficient(int row, int var, double coefficient);
  // Adds `coefficient * X_ij` for the ordered entry (i, j).
  void AddMatrixCoefficient(int row, int i, int j, double coefficient);
  // Objective coefficient (maximization) of a free variable.
  void SetObjective(int var, double coefficient);
  void SetBounds(int var, double lower, double upper);

  int num_free() const { return num_free_; }
  int psd_dim() const { return psd_dim_; }
  BlockStructure structure() const { return structure_; }
  const std::vector<EqualityRow>& equalities() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Bounds>& bounds() const { return bounds_; }

  // Multiplies a row and its right-hand side by `factor`.
  void ScaleRow(int row, double factor);

  // Throws std::invalid_argument on malformed data (out-of-range indices,
  // off-diagonal terms in a diagonal block, non-finite numbers, empty
  // bound intervals).
  void Validate() const;

  // Value of row `row`'s left-hand side at (u, X).
  double RowActivity(int row, const std::vector<double>& free_values,
                     const Eigen::MatrixXd& psd) const;
  // Same for a diagonal block given by its diagonal.
  double RowActivity(int row, const std::vector<double>& free_values,
                     const Eigen::VectorXd& psd_diagonal) const;

  // Plain-text dump: a header line, the objective, the bounds, then one
  // equality per line as sparse index:value pairs followed by "= rhs".
  void WriteText(std::ostream& out) const;

 private:
  void CheckRow(int row) const;

  int num_free_;
  int psd_dim_;
  BlockStructure structure_;
  std::vector<EqualityRow> rows_;
  std::vector<double> objective_;
  std::vector<Bounds> bounds_;
};

struct SolverOptions {
  double tol_feas = 1e-8;
  double tol_gap = 1e-7;
  int max_iter = 200;
  // Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.98;
  // Iterations without progress before declaring numerical failure.
  int stagnation_window = 30;
  bool verbose = false;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<double> free_values;
  // The PSD block for BlockStructure::kDense; empty for kDiagonal.
  Eigen::MatrixXd psd_matrix;
  // The block's diagonal for BlockStructure::kDiagonal; empty for kDense.
  Eigen::VectorXd psd_diagonal;
  // Multipliers of the equality rows, in the caller's row scaling.
  std::vector<double> equality_duals;
  double objective_value = 0.0;
  // max_r |b_r - activity_r| / (1 + max_r |b_r|) in the caller's scaling.
  double primal_residual = 0.0;
  // Relative dual infeasibility of the internal scaled problem.
  double dual_residual = 0.0;
  // Relative primal-dual gap.
  double dual_gap_estimate = 0.0;
  int iterations = 0;
};

// Deterministic: identical inputs give identical outputs. Malformed problems
// throw std::invalid_argument before any iteration; every other outcome is
// reported through `status`.
SdpSolution Solve(const SdpProblem& problem,
                  const SolverOptions& options = SolverOptions());

struct PsdCheck {
  bool is_psd;
  double min_eigenvalue;
};

// Smallest eigenvalue by a dense symmetric eigensolver. Throws
// std::invalid_argument if the matrix is not symmetric within 1e-12.
PsdCheck CheckPsd(const Eigen::MatrixXd& matrix, double tol);

}  // namespace ldpcsdp

#endif  // LDPCSDP_SDPCORE_H_
