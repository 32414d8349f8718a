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

// Exact semidefinite reformulation of rate maximization under the
// density-evolution constraint. P(x) = x - lambda(1 - rho(1 - eps x)) must be
// nonnegative on [0, 1]; this holds iff Pi(t) = (1 + t^2)^q P(t^2/(1 + t^2))
// is a sum of squares, i.e. Pi_l = sum_{i+j=l} B_ij for some PSD B over the
// monomials {1, t, ..., t^q}.
//
// With t = tan(theta), Pi(t) cos^{2q}(theta) = P(sin^2 theta), and the
// monomials t^i cos^q(theta) span the trigonometric polynomials whose
// frequencies are <= q and congruent to q mod 2. The solver works with a
// Gram matrix G over the basis {cos(k theta), sin(k theta)} of that space
// and matches the Fourier coefficients of P(sin^2 theta). This is the same
// feasible set (B = V^T G V for an invertible V) but keeps the optimal Gram
// matrices well scaled; in the monomial basis their entries grow like 4^q.

#ifndef LDPCSDP_SOSREP_H_
#define LDPCSDP_SOSREP_H_

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ldpcsdp/ensemble.h"
#include "ldpcsdp/polyops.h"
#include "ldpcsdp/sdpcore.h"

namespace ldpcsdp {

// Acceptance thresholds for a Gram certificate.
inline constexpr double kCertificateMinEigenvalue = -1e-9;
inline constexpr double kCertificateResidual = 1e-7;
// Free-variable values below this are treated as exact zeros.
inline constexpr double kLambdaCleanupThreshold = 1e-7;

// Basis {cos(k theta), sin(k theta)} for 0 <= k <= order, k = order mod 2
// (sin(0) omitted): order + 1 functions, ordered by increasing k with the
// cosine first. Products of two basis functions have even frequencies
// 0..2 order, so a Gram form is described by 2 order + 1 coefficients:
// cos(2j theta) for j = 0..order, then sin(2j theta) for j = 1..order.
class TrigonometricBasis {
 public:
  explicit TrigonometricBasis(int order);

  int order() const { return order_; }
  int size() const { return order_ + 1; }
  int frequency(int a) const { return functions_[a].first; }
  bool is_sine(int a) const { return functions_[a].second; }
  // Index of cos(k theta) or sin(k theta); -1 if absent.
  int IndexOf(int k, bool sine) const;

  int num_coefficients() const { return 2 * order_ + 1; }
  int CosineRow(int j) const { return j; }
  int SineRow(int j) const { return order_ + j; }  // j >= 1

  // Sum of squares of all basis functions, a constant: the identity Gram
  // matrix represents this value.
  int IdentityValue() const;

  // (row, coefficient) pairs of g_a g_b.
  std::vector<std::pair<int, double>> ProductTerms(int a, int b) const;

  // Fourier coefficients of g^T G g.
  Eigen::VectorXd Reconstruct(const Eigen::MatrixXd& gram) const;

  // g(theta), for tests and diagnostics.
  Eigen::VectorXd Evaluate(double theta) const;

  // Row a holds the coefficients of f_a with
  // g_a(theta) = f_a(tan theta) cos^order(theta), so a Gram matrix G in
  // this basis equals V^T G V over the monomials.
  Eigen::MatrixXd MonomialMatrix() const;

  // M of size (order + 1) x order with sin(theta) g'(theta) = M^T g(theta)
  // for the basis g' of order - 1. Then sin^2(theta) g'^T G' g' has Gram
  // matrix M G' M^T here.
  Eigen::MatrixXd SineShift() const;

 private:
  int order_;
  std::vector<std::pair<int, bool>> functions_;
};

// c_0..c_n with f(sin^2 theta) = sum_j c_j cos(2j theta), exact when f is a
// polynomial of degree <= n. Computed from n + 1 Chebyshev samples.
std::vector<double> CosineCoefficients(const std::function<double(double)>& f,
                                       int n);

// constant + gradient . lambda
struct AffineForm {
  double constant = 0.0;
  std::vector<double> gradient;

  double Evaluate(const std::vector<double>& lambda) const;
};

struct GramConstraintSystem {
  int q = 0;                            // degree of P
  int gram_dim = 0;                     // q + 1
  std::vector<int> lambda_degrees;      // 2..dv_max, one free variable each
  // Pi_l(lambda), l = 0..2q.
  std::vector<AffineForm> target_coefficients;
  // Cosine coefficients of R = P / x (degree q - 1), j = 0..q-1. P(0) = 0
  // for every lambda forces a zero row and column in any Gram matrix of Pi;
  // the solver works on this reduced face, which has interior points.
  std::vector<AffineForm> reduced_coefficients;

  // Pi coefficients at a concrete lambda vector (ordered as lambda_degrees).
  Polynomial PiAt(const std::vector<double>& lambda) const;
};

// q = (dv_max - 1)(D_c - 1) with D_c the largest check degree in use.
// Throws std::invalid_argument for dv_max < 2.
GramConstraintSystem BuildGramConstraintSystem(const DegreeDistribution& rho,
                                               const ErasureChannel& channel,
                                               int dv_max);

// Problem plus the bookkeeping needed to read designs back out.
struct RateProgram {
  SdpProblem problem;
  GramConstraintSystem system;
  DegreeDistribution rho;
  ErasureChannel channel;
  int dv_max;
};

// Free variables lambda_2..lambda_dv_max in [0, 1] with sum 1 and objective
// maximize sum lambda_i / i. One PSD block of order q over the trigonometric
// basis of order q - 1 and 2q - 1 coefficient equations for R.
RateProgram BuildRateSdp(const DegreeDistribution& rho,
                         const ErasureChannel& channel, int dv_max);

struct FeasibilityCertificate {
  // Certified Gram matrix over the trigonometric basis of order q.
  Eigen::MatrixXd gram;
  // The same certificate over the monomials {1, t, ..., t^q}.
  Eigen::MatrixXd monomial_gram;
  double min_eigenvalue = 0.0;  // of gram
  // Max deviation between the Fourier coefficients of P(sin^2 theta) and
  // those of the Gram form.
  double reconstruction_residual = 0.0;

  bool accepted() const {
    return min_eigenvalue >= kCertificateMinEigenvalue &&
           reconstruction_residual <= kCertificateResidual;
  }
};

// Certificate for a polynomial f of degree <= q (given as a function so the
// caller can evaluate it accurately) from a Gram matrix of order q + 1.
FeasibilityCertificate MakeCertificate(const std::function<double(double)>& f,
                                       const Eigen::MatrixXd& gram);

// max_l |Pi_l - sum_{i+j=l} G_ij| over l = 0..2(n-1), G of order n over the
// plain monomial basis. Throws std::invalid_argument when G is not square
// or deg(pi) > 2(n-1).
double GramResidual(const Polynomial& pi, const Eigen::MatrixXd& gram);

// Raised when the solver returns no usable point.
class NoDesignError : public std::runtime_error {
 public:
  NoDesignError(SolveStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

struct SdpDesign {
  DesignResult design;
  FeasibilityCertificate certificate;
  double objective = 0.0;  // sum lambda_i / i of the cleaned design
  SdpSolution solution;
};

// Zeroes values below kLambdaCleanupThreshold and renormalizes. values[k]
// belongs to degrees[k]. Throws std::runtime_error if the clamped values sum
// to more than 1e-6 away from 1.
DegreeDistribution CleanLambda(const std::vector<double>& values,
                               const std::vector<int>& degrees, int dv_max);

// True for optimal solutions and for stalled ones whose residuals are still
// within 100x of the default tolerances.
bool IsUsable(const SdpSolution& solution);

// Reads lambda from the free variables, zeroes entries below
// kLambdaCleanupThreshold and renormalizes, then fills rate/capacity/delta
// and the certificate. The threshold is left NaN. Throws NoDesignError for
// unusable solutions and std::runtime_error when CleanLambda does.
SdpDesign ExtractDesign(const RateProgram& program,
                        const SdpSolution& solution);

// Solves and extracts. When a lambda entry lies between the cleanup
// threshold and 1e-4 the program is solved once more at tighter tolerances
// so the clamped support is not blurred by the duality gap.
SdpDesign SolveRateProgram(const RateProgram& program,
                           const SolverOptions& options = SolverOptions());

// BuildRateSdp followed by SolveRateProgram.
SdpDesign OptimizeRate(const DegreeDistribution& rho,
                       const ErasureChannel& channel, int dv_max,
                       const SolverOptions& options = SolverOptions());

struct RefutationWitness {
  double x;      // in [0, 1]
  double value;  // p(x) < -1e-12
};

using NonnegativityResult =
    std::variant<FeasibilityCertificate, RefutationWitness>;

// Raised when neither a certificate nor a witness can be produced.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decides p >= 0 on [0, 1]. Solves max gamma s.t. P(sin^2 theta) - gamma is
// a Gram form, which always has a strictly feasible point; gamma* is the
// minimum of p. Returns a certificate for p when one is accepted, otherwise
// a witness from a dense grid refined by golden-section search.
NonnegativityResult CheckNonnegOn01(
    const Polynomial& p, const SolverOptions& options = SolverOptions());

enum class Sense { kMinimize, kMaximize };

struct FamilyBound {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double value = 0.0;  // the extremal t when status is kOptimal
  // Certificate of base + value * direction, when status is kOptimal.
  std::optional<FeasibilityCertificate> certificate;
};

// Extremizes t subject to base + t * direction >= 0 on [0, 1], posed over
// the same Gram representation as CheckNonnegOn01. An unbounded direction
// comes back as SolveStatus::kUnbounded.
FamilyBound ExtremizeNonnegFamily(
    const Polynomial& base, const Polynomial& direction, Sense sense,
    const SolverOptions& options = SolverOptions());

}  // namespace ldpcsdp

#endif  // LDPCSDP_SOSREP_H_
