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

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>

namespace ldpcsdp {

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kMaxIterations:
      return "max_iterations";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SdpProblem

SdpProblem::SdpProblem(int num_free, int psd_dim, BlockStructure structure)
    : num_free_(num_free),
      psd_dim_(psd_dim),
      structure_(structure),
      objective_(num_free > 0 ? num_free : 0, 0.0),
      bounds_(num_free > 0 ? num_free : 0) {
  if (num_free < 0) throw std::invalid_argument("num_free must be >= 0");
  if (psd_dim < 1) throw std::invalid_argument("psd_dim must be >= 1");
}

int SdpProblem::AddEquality(double rhs) {
  rows_.push_back(EqualityRow{{}, {}, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void SdpProblem::CheckRow(int row) const {
  if (row < 0 || row >= static_cast<int>(rows_.size())) {
    throw std::invalid_argument("equality row index out of range");
  }
}

void SdpProblem::AddFreeCoefficient(int row, int var, double coefficient) {
  CheckRow(row);
  if (var < 0 || var >= num_free_) {
    throw std::invalid_argument("free variable index out of range");
  }
  rows_[row].free_terms[var] += coefficient;
}

void SdpProblem::AddMatrixCoefficient(int row, int i, int j,
                                      double coefficient) {
  CheckRow(row);
  if (i < 0 || j < 0 || i >= psd_dim_ || j >= psd_dim_) {
    throw std::invalid_argument("matrix entry index out of range");
  }
  if (structure_ == BlockStructure::kDiagonal && i != j) {
    throw std::invalid_argument("off-diagonal term in a diagonal block");
  }
  rows_[row].matrix_terms[{std::min(i, j), std::max(i, j)}] += coefficient;
}

void SdpProblem::SetObjective(int var, double coefficient) {
  if (var < 0 || var >= num_free_) {
    throw std::invalid_argument("objective variable index out of range");
  }
  objective_[var] = coefficient;
}

void SdpProblem::SetBounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_free_) {
    throw std::invalid_argument("bounded variable index out of range");
  }
  bounds_[var] = Bounds{lower, upper};
}

void SdpProblem::ScaleRow(int row, double factor) {
  CheckRow(row);
  EqualityRow& r = rows_[row];
  for (auto& [var, c] : r.free_terms) c *= factor;
  for (auto& [ij, c] : r.matrix_terms) c *= factor;
  r.rhs *= factor;
}

void SdpProblem::Validate() const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const EqualityRow& row = rows_[r];
    const std::string where = "equality " + std::to_string(r) + ": ";
    if (!std::isfinite(row.rhs)) {
      throw std::invalid_argument(where + "non-finite right-hand side");
    }
    for (const auto& [var, c] : row.free_terms) {
      if (var < 0 || var >= num_free_) {
        throw std::invalid_argument(where + "undeclared free variable");
      }
      if (!std::isfinite(c)) {
        throw std::invalid_argument(where + "non-finite coefficient");
      }
    }
    for (const auto& [ij, c] : row.matrix_terms) {
      const auto [i, j] = ij;
      if (i < 0 || i > j || j >= psd_dim_) {
        throw std::invalid_argument(where + "undeclared matrix entry");
      }
      if (structure_ == BlockStructure::kDiagonal && i != j) {
        throw std::invalid_argument(where + "off-diagonal entry in diagonal block");
      }
      if (!std::isfinite(c)) {
        throw std::invalid_argument(where + "non-finite coefficient");
      }
    }
  }
  for (int v = 0; v < num_free_; ++v) {
    if (!std::isfinite(objective_[v])) {
      throw std::invalid_argument("non-finite objective coefficient");
    }
    const Bounds& b = bounds_[v];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper ||
        b.lower == std::numeric_limits<double>::infinity() ||
        b.upper == -std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("empty bound interval for free variable " +
                                  std::to_string(v));
    }
  }
}

double SdpProblem::RowActivity(int row, const std::vector<double>& free_values,
                               const Eigen::MatrixXd& psd) const {
  CheckRow(row);
  const EqualityRow& r = rows_[row];
  double value = 0.0;
  for (const auto& [var, c] : r.free_terms) value += c * free_values.at(var);
  for (const auto& [ij, c] : r.matrix_terms) value += c * psd(ij.first, ij.second);
  return value;
}

double SdpProblem::RowActivity(int row, const std::vector<double>& free_values,
                               const Eigen::VectorXd& psd_diagonal) const {
  CheckRow(row);
  const EqualityRow& r = rows_[row];
  double value = 0.0;
  for (const auto& [var, c] : r.free_terms) value += c * free_values.at(var);
  for (const auto& [ij, c] : r.matrix_terms) value += c * psd_diagonal(ij.first);
  return value;
}

void SdpProblem::WriteText(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  out << "# sdp num_free=" << num_free_ << " psd_dim=" << psd_dim_
      << " structure="
      << (structure_ == BlockStructure::kDense ? "dense" : "diagonal")
      << " equalities=" << rows_.size() << "\n";
  out << "maximize";
  for (int v = 0; v < num_free_; ++v) {
    if (objective_[v] != 0.0) out << " f" << v << ":" << objective_[v];
  }
  out << "\n";
  for (int v = 0; v < num_free_; ++v) {
    const Bounds& b = bounds_[v];
    if (std::isfinite(b.lower) || std::isfinite(b.upper)) {
      out << "bounds f" << v << " " << b.lower << " " << b.upper << "\n";
    }
  }
  for (const EqualityRow& row : rows_) {
    out << "eq";
    for (const auto& [var, c] : row.free_terms) out << " f" << var << ":" << c;
    for (const auto& [ij, c] : row.matrix_terms) {
      out << " m" << ij.first << "," << ij.second << ":" << c;
    }
    out << " = " << row.rhs << "\n";
  }
  out.precision(old_precision);
}

// ---------------------------------------------------------------------------
// Interior-point method

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Contribution c * (e_i e_j^T + e_j e_i^T) / 2 of a dense-block entry.
struct DenseTerm {
  int i;
  int j;
  double c;
};

struct OrthantTerm {
  int row;
  double c;
};

// Largest alpha with x + alpha * dx >= 0 componentwise.
double MaxStepOrthant(const VectorXd& x, const VectorXd& dx) {
  double alpha = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx[i] < 0.0) alpha = std::min(alpha, -x[i] / dx[i]);
  }
  return alpha;
}

// Largest alpha with X + alpha * dX PSD, given the Cholesky factor of X.
double MaxStepPsd(const Eigen::LLT<MatrixXd>& chol_x, const MatrixXd& dx) {
  if (dx.size() == 0) return kInf;
  MatrixXd t = chol_x.matrixL().solve(dx);
  t = chol_x.matrixL().solve(t.transpose()).eval();
  t = 0.5 * (t + t.transpose()).eval();
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<MatrixXd>(t, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  return min_eig >= 0.0 ? kInf : -1.0 / min_eig;
}

class InteriorPointSolver {
 public:
  InteriorPointSolver(const SdpProblem& problem, const SolverOptions& options)
      : problem_(problem), options_(options) {
    Setup();
  }

  SdpSolution Run();

 private:
  struct Iterate {
    MatrixXd X, S;
    VectorXd z, s, u, w;
  };
  struct Residuals {
    VectorXd rp;
    MatrixXd Rd;
    VectorXd rdz, rf;
  };
  struct Direction {
    MatrixXd dX, dS;
    VectorXd dz, ds, du, dw;
  };

  void Setup();
  VectorXd ApplyA(const MatrixXd& X, const VectorXd& z) const;
  MatrixXd ApplyAdjointDense(const VectorXd& w) const;
  VectorXd ApplyAdjointOrthant(const VectorXd& w) const;
  Residuals ComputeResiduals(const Iterate& it) const;
  bool FactorNewtonSystem(const Iterate& it);
  VectorXd SolveKkt(const VectorXd& rhs) const;
  VectorXd ApplyKkt(const VectorXd& sol) const;
  void SolveBordered(const VectorXd& h, const VectorXd& rf, VectorXd* dw,
                     VectorXd* du) const;
  Direction ComputeDirection(const Residuals& res, const MatrixXd& Hc,
                             const VectorXd& hz) const;
  SdpSolution Finish(const Iterate& it, SolveStatus status, int iterations,
                     double rel_d, double rel_gap) const;

  const SdpProblem& problem_;
  const SolverOptions& options_;

  int n_ = 0;        // dense block order, 0 for a diagonal block
  int k_ = 0;        // orthant dimension (diagonal block + bound slacks)
  int m_ = 0;        // equality rows (user rows + bound rows)
  int mf_ = 0;       // free variables
  int num_user_rows_ = 0;
  int num_diag_ = 0;  // leading orthant entries that form the diagonal block

  std::vector<std::vector<DenseTerm>> dense_rows_;
  std::vector<int> rows_with_dense_;
  std::vector<std::vector<OrthantTerm>> orthant_cols_;
  MatrixXd F_;
  VectorXd b_;
  VectorXd f_;  // minimization objective over free variables
  std::vector<double> row_scale_;
  double objective_scale_ = 1.0;

  // Per-iteration scaling and factorization.
  MatrixXd G_, G_inv_, W_;
  VectorXd sigma_;           // NT scaled point (eigenvalues)
  VectorXd d_, g_, v_;       // orthant scaling
  // Bordered Newton matrix [M F; F^T 0], M the Schur complement. M alone
  // is singular on rows that touch only free variables, so for a dense block
  // the whole system is factored.
  MatrixXd kkt_dense_;
  Eigen::PartialPivLU<MatrixXd> dense_factor_;
  // Orthant-only problems: rows touched by orthant variables (S) carry a
  // sparse SPD block of M; the remaining rows (Z) have zero rows in M. dw_S
  // is eliminated through M_SS, leaving a small dense system in (dw_Z, du).
  std::vector<int> s_rows_, z_rows_;
  Eigen::SparseMatrix<double> m_ss_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> m_ss_factor_;
  bool sparse_pattern_ready_ = false;
  MatrixXd f_s_, f_z_, y_;  // y_ = M_SS^{-1} F_S
  MatrixXd reduced_;
  Eigen::PartialPivLU<MatrixXd> reduced_factor_;
};

void InteriorPointSolver::Setup() {
  problem_.Validate();
  const bool diagonal = problem_.structure() == BlockStructure::kDiagonal;
  n_ = diagonal ? 0 : problem_.psd_dim();
  num_diag_ = diagonal ? problem_.psd_dim() : 0;
  mf_ = problem_.num_free();
  num_user_rows_ = static_cast<int>(problem_.equalities().size());

  // Bound rows: u_v - z = lower, u_v + z = upper.
  struct BoundRow {
    int var;
    double sign;
    double rhs;
  };
  std::vector<BoundRow> bound_rows;
  for (int v = 0; v < mf_; ++v) {
    const Bounds& b = problem_.bounds()[v];
    if (std::isfinite(b.lower)) bound_rows.push_back({v, -1.0, b.lower});
    if (std::isfinite(b.upper)) bound_rows.push_back({v, 1.0, b.upper});
  }
  m_ = num_user_rows_ + static_cast<int>(bound_rows.size());
  k_ = num_diag_ + static_cast<int>(bound_rows.size());

  dense_rows_.assign(m_, {});
  orthant_cols_.assign(k_, {});
  F_ = MatrixXd::Zero(m_, mf_);
  b_ = VectorXd::Zero(m_);
  row_scale_.assign(m_, 1.0);

  for (int r = 0; r < num_user_rows_; ++r) {
    const EqualityRow& row = problem_.equalities()[r];
    // Equilibrate: unit Euclidean norm over the row's coefficients.
    double norm2 = 0.0;
    for (const auto& [var, c] : row.free_terms) norm2 += c * c;
    for (const auto& [ij, c] : row.matrix_terms) norm2 += c * c;
    const double scale = norm2 > 0.0 ? std::sqrt(norm2) : 1.0;
    row_scale_[r] = scale;
    b_[r] = row.rhs / scale;
    for (const auto& [var, c] : row.free_terms) F_(r, var) = c / scale;
    for (const auto& [ij, c] : row.matrix_terms) {
      if (diagonal) {
        orthant_cols_[ij.first].push_back({r, c / scale});
      } else {
        dense_rows_[r].push_back({ij.first, ij.second, c / scale});
      }
    }
    if (!dense_rows_[r].empty()) rows_with_dense_.push_back(r);
  }
  for (size_t t = 0; t < bound_rows.size(); ++t) {
    const int r = num_user_rows_ + static_cast<int>(t);
    F_(r, bound_rows[t].var) = 1.0;
    orthant_cols_[num_diag_ + t].push_back({r, bound_rows[t].sign});
    b_[r] = bound_rows[t].rhs;
  }

  if (n_ == 0) {
    std::vector<bool> touched(m_, false);
    for (int v = 0; v < k_; ++v) {
      for (const OrthantTerm& t : orthant_cols_[v]) touched[t.row] = true;
    }
    for (int r = 0; r < m_; ++r) (touched[r] ? s_rows_ : z_rows_).push_back(r);
    f_s_.resize(s_rows_.size(), mf_);
    f_z_.resize(z_rows_.size(), mf_);
    for (size_t a = 0; a < s_rows_.size(); ++a) f_s_.row(a) = F_.row(s_rows_[a]);
    for (size_t a = 0; a < z_rows_.size(); ++a) f_z_.row(a) = F_.row(z_rows_[a]);
  }

  f_ = VectorXd::Zero(mf_);
  double cmax = 0.0;
  for (int v = 0; v < mf_; ++v) {
    cmax = std::max(cmax, std::abs(problem_.objective()[v]));
  }
  objective_scale_ = std::max(1.0, cmax);
  for (int v = 0; v < mf_; ++v) {
    f_[v] = -problem_.objective()[v] / objective_scale_;
  }
}

VectorXd InteriorPointSolver::ApplyA(const MatrixXd& X,
                                     const VectorXd& z) const {
  VectorXd out = VectorXd::Zero(m_);
  for (int r : rows_with_dense_) {
    double value = 0.0;
    for (const DenseTerm& t : dense_rows_[r]) value += t.c * X(t.i, t.j);
    out[r] = value;
  }
  for (int v = 0; v < k_; ++v) {
    for (const OrthantTerm& t : orthant_cols_[v]) out[t.row] += t.c * z[v];
  }
  return out;
}

MatrixXd InteriorPointSolver::ApplyAdjointDense(const VectorXd& w) const {
  MatrixXd out = MatrixXd::Zero(n_, n_);
  for (int r : rows_with_dense_) {
    for (const DenseTerm& t : dense_rows_[r]) {
      const double half = 0.5 * t.c * w[r];
      out(t.i, t.j) += half;
      out(t.j, t.i) += half;
    }
  }
  return out;
}

VectorXd InteriorPointSolver::ApplyAdjointOrthant(const VectorXd& w) const {
  VectorXd out = VectorXd::Zero(k_);
  for (int v = 0; v < k_; ++v) {
    for (const OrthantTerm& t : orthant_cols_[v]) out[v] += t.c * w[t.row];
  }
  return out;
}

InteriorPointSolver::Residuals InteriorPointSolver::ComputeResiduals(
    const Iterate& it) const {
  Residuals res;
  res.rp = b_ - ApplyA(it.X, it.z) - F_ * it.u;
  res.Rd = -ApplyAdjointDense(it.w) - it.S;  // C = 0
  res.rdz = -ApplyAdjointOrthant(it.w) - it.s;
  res.rf = f_ - F_.transpose() * it.w;
  return res;
}

bool InteriorPointSolver::FactorNewtonSystem(const Iterate& it) {
  // Nesterov-Todd scaling for the dense block: with X = L L^T, S = R R^T and
  // R^T L = U diag(sigma) V^T, G = L V diag(sigma)^(-1/2) satisfies
  // G^{-1} X G^{-T} = G^T S G = diag(sigma) and W = G G^T maps S to X.
  if (n_ > 0) {
    Eigen::LLT<MatrixXd> lx(it.X), ls(it.S);
    if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) {
      return false;
    }
    const MatrixXd L = lx.matrixL();
    const MatrixXd R = ls.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(R.transpose() * L,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    sigma_ = svd.singularValues();
    if (sigma_.minCoeff() <= 0.0 || !sigma_.allFinite()) return false;
    const VectorXd inv_sqrt = sigma_.cwiseSqrt().cwiseInverse();
    G_ = L * svd.matrixV() * inv_sqrt.asDiagonal();
    G_inv_ = sigma_.cwiseSqrt().asDiagonal() * svd.matrixV().transpose() *
             L.triangularView<Eigen::Lower>().solve(
                 MatrixXd::Identity(n_, n_));
    W_ = G_ * G_.transpose();
    W_ = 0.5 * (W_ + W_.transpose()).eval();
  }
  d_ = it.z.cwiseQuotient(it.s);
  g_ = d_.cwiseSqrt();
  v_ = it.z.cwiseProduct(it.s).cwiseSqrt();

  const int dim = m_ + mf_;
  if (n_ > 0) {
    kkt_dense_ = MatrixXd::Zero(dim, dim);
    auto M = kkt_dense_.topLeftCorner(m_, m_);
    for (size_t a = 0; a < rows_with_dense_.size(); ++a) {
      const int r = rows_with_dense_[a];
      for (size_t bidx = a; bidx < rows_with_dense_.size(); ++bidx) {
        const int s = rows_with_dense_[bidx];
        double value = 0.0;
        for (const DenseTerm& p : dense_rows_[r]) {
          for (const DenseTerm& q : dense_rows_[s]) {
            value += p.c * q.c *
                     (W_(p.i, q.i) * W_(p.j, q.j) + W_(p.i, q.j) * W_(p.j, q.i));
          }
        }
        value *= 0.5;
        M(r, s) += value;
        if (s != r) M(s, r) += value;
      }
    }
    for (int v = 0; v < k_; ++v) {
      for (const OrthantTerm& p : orthant_cols_[v]) {
        for (const OrthantTerm& q : orthant_cols_[v]) {
          M(p.row, q.row) += d_[v] * p.c * q.c;
        }
      }
    }
    kkt_dense_.topRightCorner(m_, mf_) = F_;
    kkt_dense_.bottomLeftCorner(mf_, m_) = F_.transpose();
    dense_factor_.compute(kkt_dense_);
    // PartialPivLU does not report singularity; probe the pivots instead.
    const VectorXd diag = dense_factor_.matrixLU().diagonal().cwiseAbs();
    if (dim > 0 && !(diag.minCoeff() > 1e-300) ) return false;
    return diag.allFinite();
  }
  std::vector<int> position(m_, -1);
  for (size_t a = 0; a < s_rows_.size(); ++a) position[s_rows_[a]] = a;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int v = 0; v < k_; ++v) {
    for (const OrthantTerm& p : orthant_cols_[v]) {
      for (const OrthantTerm& q : orthant_cols_[v]) {
        triplets.emplace_back(position[p.row], position[q.row],
                              d_[v] * p.c * q.c);
      }
    }
  }
  const int ns = static_cast<int>(s_rows_.size());
  const int nz = static_cast<int>(z_rows_.size());
  m_ss_.resize(ns, ns);
  m_ss_.setFromTriplets(triplets.begin(), triplets.end());
  if (!sparse_pattern_ready_) {
    m_ss_factor_.analyzePattern(m_ss_);
    sparse_pattern_ready_ = true;
  }
  m_ss_factor_.factorize(m_ss_);
  if (m_ss_factor_.info() != Eigen::Success) return false;
  if (!(m_ss_factor_.vectorD().minCoeff() > 0.0)) return false;
  y_ = m_ss_factor_.solve(f_s_);
  if (!y_.allFinite()) return false;
  reduced_ = MatrixXd::Zero(nz + mf_, nz + mf_);
  reduced_.topRightCorner(nz, mf_) = f_z_;
  reduced_.bottomLeftCorner(mf_, nz) = f_z_.transpose();
  reduced_.bottomRightCorner(mf_, mf_) = -f_s_.transpose() * y_;
  if (nz + mf_ == 0) return true;
  reduced_factor_.compute(reduced_);
  const VectorXd diag = reduced_factor_.matrixLU().diagonal().cwiseAbs();
  return diag.minCoeff() > 1e-300 && diag.allFinite();
}

VectorXd InteriorPointSolver::SolveKkt(const VectorXd& rhs) const {
  if (n_ > 0) return dense_factor_.solve(rhs);
  const int nz = static_cast<int>(z_rows_.size());
  VectorXd h_s(s_rows_.size());
  for (size_t a = 0; a < s_rows_.size(); ++a) h_s[a] = rhs[s_rows_[a]];
  const VectorXd t = m_ss_factor_.solve(h_s);
  VectorXd small(nz + mf_);
  for (int a = 0; a < nz; ++a) small[a] = rhs[z_rows_[a]];
  small.tail(mf_) = rhs.tail(mf_) - f_s_.transpose() * t;
  const VectorXd zu = nz + mf_ > 0 ? VectorXd(reduced_factor_.solve(small))
                                   : VectorXd(small);
  VectorXd sol(m_ + mf_);
  const VectorXd du = zu.tail(mf_);
  const VectorXd dw_s = t - y_ * du;
  for (size_t a = 0; a < s_rows_.size(); ++a) sol[s_rows_[a]] = dw_s[a];
  for (int a = 0; a < nz; ++a) sol[z_rows_[a]] = zu[a];
  sol.tail(mf_) = du;
  return sol;
}

VectorXd InteriorPointSolver::ApplyKkt(const VectorXd& sol) const {
  if (n_ > 0) return kkt_dense_ * sol;
  const VectorXd dw = sol.head(m_);
  const VectorXd du = sol.tail(mf_);
  VectorXd out(m_ + mf_);
  out.head(m_) = F_ * du;
  VectorXd dw_s(s_rows_.size());
  for (size_t a = 0; a < s_rows_.size(); ++a) dw_s[a] = dw[s_rows_[a]];
  const VectorXd m_dw = m_ss_ * dw_s;
  for (size_t a = 0; a < s_rows_.size(); ++a) out[s_rows_[a]] += m_dw[a];
  out.tail(mf_) = F_.transpose() * dw;
  return out;
}

// Solves [M F; F^T 0] [dw; du] = [h; rf] with one round of iterative
// refinement.
void InteriorPointSolver::SolveBordered(const VectorXd& h, const VectorXd& rf,
                                        VectorXd* dw, VectorXd* du) const {
  VectorXd rhs(m_ + mf_);
  rhs << h, rf;
  VectorXd sol = SolveKkt(rhs);
  const VectorXd applied = ApplyKkt(sol);
  sol += SolveKkt(rhs - applied);
  *dw = sol.head(m_);
  *du = sol.tail(mf_);
}

// Builds the search direction for the scaled complementarity target
// (Hc for the dense block, hz for the orthant): the linearized
// complementarity reads dX + W dS W = G Hc G^T and dz + d .* ds = g .* hz.
InteriorPointSolver::Direction InteriorPointSolver::ComputeDirection(
    const Residuals& res, const MatrixXd& Hc, const VectorXd& hz) const {
  Direction dir;
  MatrixXd R, WRdW;
  if (n_ > 0) {
    R = G_ * Hc * G_.transpose();
    WRdW = W_ * res.Rd * W_;
  } else {
    R = MatrixXd::Zero(0, 0);
    WRdW = MatrixXd::Zero(0, 0);
  }
  const VectorXd Rz = g_.cwiseProduct(hz);
  const VectorXd h = res.rp - ApplyA(R, Rz) +
                     ApplyA(WRdW, d_.cwiseProduct(res.rdz));
  SolveBordered(h, res.rf, &dir.dw, &dir.du);
  auto recover = [&]() {
    if (n_ > 0) {
      dir.dS = res.Rd - ApplyAdjointDense(dir.dw);
      dir.dX = R - W_ * dir.dS * W_;
      dir.dX = 0.5 * (dir.dX + dir.dX.transpose()).eval();
    } else {
      dir.dS = MatrixXd::Zero(0, 0);
      dir.dX = MatrixXd::Zero(0, 0);
    }
    dir.ds = res.rdz - ApplyAdjointOrthant(dir.dw);
    dir.dz = Rz - d_.cwiseProduct(dir.ds);
  };
  recover();
  // Near the boundary W spans many orders of magnitude and small errors in
  // dw are amplified in dX. Refine against the residual of the linearized
  // primal equation itself rather than the formed Schur complement.
  double err = kInf;
  for (int round = 0; round < 4; ++round) {
    const VectorXd ep = res.rp - ApplyA(dir.dX, dir.dz) - F_ * dir.du;
    const VectorXd ef = res.rf - F_.transpose() * dir.dw;
    const double e = std::sqrt(ep.squaredNorm() + ef.squaredNorm());
    if (!(e < 0.5 * err)) break;
    err = e;
    VectorXd cw, cu;
    SolveBordered(ep, ef, &cw, &cu);
    const Direction saved = dir;
    dir.dw += cw;
    dir.du += cu;
    recover();
    const VectorXd ep2 = res.rp - ApplyA(dir.dX, dir.dz) - F_ * dir.du;
    const VectorXd ef2 = res.rf - F_.transpose() * dir.dw;
    if (std::sqrt(ep2.squaredNorm() + ef2.squaredNorm()) >= e) {
      dir = saved;
      break;
    }
  }
  return dir;
}

SdpSolution InteriorPointSolver::Run() {
  const int cone_dim = n_ + k_;
  const double start = std::max(10.0, std::sqrt(static_cast<double>(cone_dim)));

  Iterate it;
  it.X = start * MatrixXd::Identity(n_, n_);
  it.S = start * MatrixXd::Identity(n_, n_);
  it.z = VectorXd::Constant(k_, start);
  it.s = VectorXd::Constant(k_, start);
  it.u = VectorXd::Zero(mf_);
  it.w = VectorXd::Zero(m_);

  const double b_norm = b_.norm();
  const double c_norm = f_.norm();
  double best_merit = kInf;
  int last_progress = 0;
  double rel_d = kInf, rel_gap = kInf;

  for (int iter = 0;; ++iter) {
    const Residuals res = ComputeResiduals(it);
    const double xs = (n_ > 0 ? (it.X.cwiseProduct(it.S)).sum() : 0.0) +
                      it.z.dot(it.s);
    const double mu = xs / cone_dim;
    const double pobj = f_.dot(it.u);
    const double dobj = b_.dot(it.w);
    const double rel_p = res.rp.norm() / (1.0 + b_norm);
    const double dual_norm = std::sqrt(res.Rd.squaredNorm() +
                                       res.rdz.squaredNorm() +
                                       res.rf.squaredNorm());
    rel_d = dual_norm / (1.0 + c_norm);
    rel_gap = std::max(std::abs(pobj - dobj), std::abs(xs)) /
              (1.0 + std::abs(pobj) + std::abs(dobj));

    if (options_.verbose) {
      std::cerr << std::scientific << std::setprecision(3) << "iter " << iter
                << " pobj " << pobj << " dobj " << dobj << " rp " << rel_p
                << " rd " << rel_d << " gap " << rel_gap << " mu " << mu
                << "\n";
    }
    if (!std::isfinite(rel_p) || !std::isfinite(rel_d) ||
        !std::isfinite(rel_gap)) {
      return Finish(it, SolveStatus::kNumericalFailure, iter, rel_d, rel_gap);
    }

    if (rel_p <= options_.tol_feas && rel_d <= options_.tol_feas &&
        rel_gap <= options_.tol_gap) {
      SdpSolution candidate =
          Finish(it, SolveStatus::kOptimal, iter, rel_d, rel_gap);
      if (candidate.primal_residual <= options_.tol_feas) return candidate;
    }

    // Certificates of infeasibility from diverging iterates.
    if (dobj > 0.0) {
      const double pinf =
          std::sqrt(res.Rd.squaredNorm() + res.rdz.squaredNorm() +
                    (f_ - res.rf).squaredNorm()) /
          dobj;
      if (pinf < options_.tol_feas) {
        return Finish(it, SolveStatus::kInfeasible, iter, rel_d, rel_gap);
      }
    }
    if (pobj < 0.0) {
      const double dinf = (b_ - res.rp).norm() / -pobj;
      if (dinf < options_.tol_feas) {
        return Finish(it, SolveStatus::kUnbounded, iter, rel_d, rel_gap);
      }
    }

    const double merit = std::max({rel_p / options_.tol_feas,
                                   rel_d / options_.tol_feas,
                                   rel_gap / options_.tol_gap});
    if (merit < 0.99 * best_merit) {
      best_merit = merit;
      last_progress = iter;
    } else if (iter - last_progress >= options_.stagnation_window) {
      return Finish(it, SolveStatus::kNumericalFailure, iter, rel_d, rel_gap);
    }
    if (iter >= options_.max_iter) {
      return Finish(it, SolveStatus::kMaxIterations, iter, rel_d, rel_gap);
    }

    if (!FactorNewtonSystem(it)) {
      return Finish(it, SolveStatus::kNumericalFailure, iter, rel_d, rel_gap);
    }

    // Predictor (affine scaling) direction.
    MatrixXd Hc = MatrixXd::Zero(n_, n_);
    if (n_ > 0) Hc.diagonal() = -sigma_;
    VectorXd hz = -v_;
    const Direction aff = ComputeDirection(res, Hc, hz);

    Eigen::LLT<MatrixXd> chol_x, chol_s;
    if (n_ > 0) {
      chol_x.compute(it.X);
      chol_s.compute(it.S);
    }
    auto primal_step = [&](const Direction& d) {
      double a = MaxStepOrthant(it.z, d.dz);
      if (n_ > 0) a = std::min(a, MaxStepPsd(chol_x, d.dX));
      return a;
    };
    auto dual_step = [&](const Direction& d) {
      double a = MaxStepOrthant(it.s, d.ds);
      if (n_ > 0) a = std::min(a, MaxStepPsd(chol_s, d.dS));
      return a;
    };
    const double ap_aff = std::min(1.0, primal_step(aff));
    const double ad_aff = std::min(1.0, dual_step(aff));
    double xs_aff = (it.z + ap_aff * aff.dz).dot(it.s + ad_aff * aff.ds);
    if (n_ > 0) {
      xs_aff += ((it.X + ap_aff * aff.dX).cwiseProduct(it.S + ad_aff * aff.dS))
                    .sum();
    }
    const double mu_aff = xs_aff / cone_dim;
    const double centering =
        std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
    const double target = centering * mu;

    // Corrector: centering plus Mehrotra's second-order term, solved as a
    // Lyapunov equation in the scaled space where the iterate is diagonal.
    if (n_ > 0) {
      const MatrixXd dxs = G_inv_ * aff.dX * G_inv_.transpose();
      const MatrixXd dss = G_.transpose() * aff.dS * G_;
      const MatrixXd second = dxs * dss;
      MatrixXd rhs = -(second + second.transpose());
      for (int i = 0; i < n_; ++i) {
        rhs(i, i) += 2.0 * (target - sigma_[i] * sigma_[i]);
      }
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) Hc(i, j) = rhs(i, j) / (sigma_[i] + sigma_[j]);
      }
    }
    for (int v = 0; v < k_; ++v) {
      hz[v] = (target - v_[v] * v_[v] - aff.dz[v] * aff.ds[v]) / v_[v];
    }
    const Direction dir = ComputeDirection(res, Hc, hz);

    const double tau = options_.step_fraction;
    const double ap = std::min(1.0, tau * primal_step(dir));
    const double ad = std::min(1.0, tau * dual_step(dir));
    if (!(ap > 0.0) || !(ad > 0.0)) {
      return Finish(it, SolveStatus::kNumericalFailure, iter, rel_d, rel_gap);
    }

    if (n_ > 0) {
      it.X += ap * dir.dX;
      it.S += ad * dir.dS;
      it.X = 0.5 * (it.X + it.X.transpose()).eval();
      it.S = 0.5 * (it.S + it.S.transpose()).eval();
    }
    it.z += ap * dir.dz;
    it.u += ap * dir.du;
    it.s += ad * dir.ds;
    it.w += ad * dir.dw;
  }
}

SdpSolution InteriorPointSolver::Finish(const Iterate& it, SolveStatus status,
                                        int iterations, double rel_d,
                                        double rel_gap) const {
  SdpSolution sol;
  sol.status = status;
  sol.iterations = iterations;
  sol.free_values.assign(it.u.data(), it.u.data() + it.u.size());
  if (n_ > 0) {
    sol.psd_matrix = it.X;
  } else {
    sol.psd_diagonal = it.z.head(num_diag_);
  }
  sol.equality_duals.resize(num_user_rows_);
  for (int r = 0; r < num_user_rows_; ++r) {
    sol.equality_duals[r] = -objective_scale_ * it.w[r] / row_scale_[r];
  }
  double objective = 0.0;
  for (int v = 0; v < mf_; ++v) {
    objective += problem_.objective()[v] * sol.free_values[v];
  }
  sol.objective_value = objective;

  double max_rhs = 0.0, max_res = 0.0;
  for (int r = 0; r < num_user_rows_; ++r) {
    const double rhs = problem_.equalities()[r].rhs;
    max_rhs = std::max(max_rhs, std::abs(rhs));
    max_res = std::max(
        max_res,
        std::abs(rhs - (n_ > 0 ? problem_.RowActivity(r, sol.free_values,
                                                      sol.psd_matrix)
                                : problem_.RowActivity(r, sol.free_values,
                                                      sol.psd_diagonal))));
  }
  sol.primal_residual = max_res / (1.0 + max_rhs);
  sol.dual_residual = rel_d;
  sol.dual_gap_estimate = rel_gap;
  return sol;
}

}  // namespace

SdpSolution Solve(const SdpProblem& problem, const SolverOptions& options) {
  InteriorPointSolver solver(problem, options);
  return solver.Run();
}

PsdCheck CheckPsd(const Eigen::MatrixXd& matrix, double tol) {
  if (matrix.rows() != matrix.cols()) {
    throw std::invalid_argument("psd check: matrix is not square");
  }
  if (matrix.size() == 0) return {true, 0.0};
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("psd check: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  return {min_eig >= -tol, min_eig};
}

}  // namespace ldpcsdp
