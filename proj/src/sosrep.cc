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

#include "ldpcsdp/sosrep.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace ldpcsdp {
namespace {

double GoldenSectionMin(const Polynomial& p, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = p(c);
  double fd = p(d);
  for (int it = 0; it < 100 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = p(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = p(d);
    }
  }
  return fc < fd ? c : d;
}

std::optional<RefutationWitness> SearchWitness(const Polynomial& p) {
  constexpr int kGrid = 10000;
  int best = 0;
  double best_value = p(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double v = p(static_cast<double>(k) / kGrid);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double x = static_cast<double>(best) / kGrid;
  const double lo = std::max(0.0, (best - 1.0) / kGrid);
  const double hi = std::min(1.0, (best + 1.0) / kGrid);
  const double refined = GoldenSectionMin(p, lo, hi);
  if (p(refined) < best_value) {
    x = refined;
    best_value = p(refined);
  }
  if (best_value < -1e-12) return RefutationWitness{x, best_value};
  return std::nullopt;
}

// Adds the Gram part of every coefficient equation to rows first_row + r.
void AddGramTerms(SdpProblem& problem, const TrigonometricBasis& basis,
                  int first_row) {
  for (int a = 0; a < basis.size(); ++a) {
    for (int b = a; b < basis.size(); ++b) {
      const double mult = a == b ? 1.0 : 2.0;
      for (const auto& [row, c] : basis.ProductTerms(a, b)) {
        problem.AddMatrixCoefficient(first_row + row, a, b, mult * c);
      }
    }
  }
}

// x - sum_i lambda_i (1 - rho(1 - eps x))^{i-1}
std::function<double(double)> DeFunction(const std::vector<int>& degrees,
                                         const std::vector<double>& lambda,
                                         const DegreeDistribution& rho,
                                         double eps) {
  return [=](double x) {
    const double e = rho.Complement(eps * x);
    double v = x;
    for (size_t k = 0; k < degrees.size(); ++k) {
      if (lambda[k] != 0.0) v -= lambda[k] * std::pow(e, degrees[k] - 1);
    }
    return v;
  };
}

}  // namespace

TrigonometricBasis::TrigonometricBasis(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("basis order must be >= 0");
  for (int k = order % 2; k <= order; k += 2) {
    functions_.emplace_back(k, false);
    if (k > 0) functions_.emplace_back(k, true);
  }
}

int TrigonometricBasis::IndexOf(int k, bool sine) const {
  for (int a = 0; a < size(); ++a) {
    if (functions_[a].first == k && functions_[a].second == sine) return a;
  }
  return -1;
}

int TrigonometricBasis::IdentityValue() const { return order_ / 2 + 1; }

std::vector<std::pair<int, double>> TrigonometricBasis::ProductTerms(
    int a, int b) const {
  std::vector<std::pair<int, double>> terms;
  auto add = [&](int f, bool sine, double c) {
    if (sine) {
      if (f < 0) {
        f = -f;
        c = -c;
      }
      if (f == 0) return;
      terms.emplace_back(SineRow(f / 2), c);
    } else {
      terms.emplace_back(CosineRow(std::abs(f) / 2), c);
    }
  };
  int ka = functions_[a].first, kb = functions_[b].first;
  bool sa = functions_[a].second, sb = functions_[b].second;
  if (!sa && sb) {
    std::swap(ka, kb);
    std::swap(sa, sb);
  }
  if (!sa && !sb) {
    add(ka - kb, false, 0.5);
    add(ka + kb, false, 0.5);
  } else if (sa && sb) {
    add(ka - kb, false, 0.5);
    add(ka + kb, false, -0.5);
  } else {
    add(ka + kb, true, 0.5);
    add(ka - kb, true, 0.5);
  }
  return terms;
}

Eigen::VectorXd TrigonometricBasis::Reconstruct(
    const Eigen::MatrixXd& gram) const {
  if (gram.rows() != size() || gram.cols() != size()) {
    throw std::invalid_argument("Gram matrix order does not match basis");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_coefficients());
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      for (const auto& [row, c] : ProductTerms(a, b)) {
        out[row] += c * gram(a, b);
      }
    }
  }
  return out;
}

Eigen::VectorXd TrigonometricBasis::Evaluate(double theta) const {
  Eigen::VectorXd g(size());
  for (int a = 0; a < size(); ++a) {
    const double arg = functions_[a].first * theta;
    g[a] = functions_[a].second ? std::sin(arg) : std::cos(arg);
  }
  return g;
}

Eigen::MatrixXd TrigonometricBasis::MonomialMatrix() const {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(size(), size());
  for (int a = 0; a < size(); ++a) {
    // cos^order * e^{i k theta} = (1 + i t)^m (1 - i t)^{order - m}
    const int m = (functions_[a].first + order_) / 2;
    std::vector<std::complex<double>> poly{1.0};
    for (int f = 0; f < order_; ++f) {
      const std::complex<double> root(0.0, f < m ? 1.0 : -1.0);
      std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] += root * poly[i];
      }
      poly = std::move(next);
    }
    for (int i = 0; i <= order_; ++i) {
      v(a, i) = functions_[a].second ? poly[i].imag() : poly[i].real();
    }
  }
  return v;
}

Eigen::MatrixXd TrigonometricBasis::SineShift() const {
  if (order_ < 1) throw std::invalid_argument("sine shift needs order >= 1");
  const TrigonometricBasis lower(order_ - 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), lower.size());
  for (int b = 0; b < lower.size(); ++b) {
    auto add = [&](int f, bool sine, double c) {
      if (sine && f < 0) {
        f = -f;
        c = -c;
      }
      if (sine && f == 0) return;
      m(IndexOf(std::abs(f), sine), b) += c;
    };
    const int k = lower.frequency(b);
    if (lower.is_sine(b)) {
      add(k - 1, false, 0.5);
      add(k + 1, false, -0.5);
    } else {
      add(k + 1, true, 0.5);
      add(k - 1, true, -0.5);
    }
  }
  return m;
}

std::vector<double> CosineCoefficients(const std::function<double(double)>& f,
                                       int n) {
  if (n < 0) throw std::invalid_argument("coefficient count must be >= 0");
  const int num = n + 1;
  std::vector<double> phi(num), values(num);
  for (int k = 0; k < num; ++k) {
    phi[k] = std::numbers::pi * (k + 0.5) / num;
    values[k] = f(0.5 * (1.0 - std::cos(phi[k])));
  }
  std::vector<double> c(num, 0.0);
  for (int j = 0; j < num; ++j) {
    double sum = 0.0;
    for (int k = 0; k < num; ++k) sum += values[k] * std::cos(j * phi[k]);
    c[j] = (j == 0 ? 1.0 : 2.0) * sum / num;
  }
  return c;
}

double AffineForm::Evaluate(const std::vector<double>& lambda) const {
  double v = constant;
  for (size_t k = 0; k < gradient.size(); ++k) v += gradient[k] * lambda[k];
  return v;
}

Polynomial GramConstraintSystem::PiAt(const std::vector<double>& lambda) const {
  std::vector<double> c(target_coefficients.size());
  for (size_t l = 0; l < c.size(); ++l) {
    c[l] = target_coefficients[l].Evaluate(lambda);
  }
  return Polynomial(std::move(c));
}

GramConstraintSystem BuildGramConstraintSystem(const DegreeDistribution& rho,
                                               const ErasureChannel& channel,
                                               int dv_max) {
  if (dv_max < 2) {
    throw std::invalid_argument("dv_max must be at least 2, got " +
                                std::to_string(dv_max));
  }
  GramConstraintSystem sys;
  sys.q = (dv_max - 1) * (rho.effective_max_degree() - 1);
  sys.gram_dim = sys.q + 1;
  const int num_lambda = dv_max - 1;

  sys.target_coefficients.assign(2 * sys.q + 1, AffineForm{});
  for (auto& form : sys.target_coefficients) {
    form.gradient.assign(num_lambda, 0.0);
  }
  const Polynomial x_pi = PiTransform(Polynomial::Monomial(1), sys.q);
  for (int l = 0; l <= x_pi.degree(); ++l) {
    sys.target_coefficients[l].constant = x_pi[l];
  }

  const int n = sys.q - 1;
  sys.reduced_coefficients.assign(n + 1, AffineForm{});
  for (auto& form : sys.reduced_coefficients) {
    form.gradient.assign(num_lambda, 0.0);
  }
  sys.reduced_coefficients[0].constant = 1.0;

  const double eps = channel.epsilon();
  for (int d = 2; d <= dv_max; ++d) {
    sys.lambda_degrees.push_back(d);
    const Polynomial g =
        PiTransform(ErasureTransferPower(rho, channel, d), sys.q);
    for (int l = 0; l <= g.degree(); ++l) {
      sys.target_coefficients[l].gradient[d - 2] = -g[l];
    }
    const std::vector<double> c = CosineCoefficients(
        [&](double x) { return std::pow(rho.Complement(eps * x), d - 1) / x; },
        n);
    for (int j = 0; j <= n; ++j) {
      sys.reduced_coefficients[j].gradient[d - 2] = -c[j];
    }
  }
  return sys;
}

RateProgram BuildRateSdp(const DegreeDistribution& rho,
                         const ErasureChannel& channel, int dv_max) {
  GramConstraintSystem sys = BuildGramConstraintSystem(rho, channel, dv_max);
  const int num_lambda = static_cast<int>(sys.lambda_degrees.size());
  const TrigonometricBasis basis(sys.q - 1);
  SdpProblem problem(num_lambda, basis.size(), BlockStructure::kDense);
  for (int k = 0; k < num_lambda; ++k) {
    problem.SetObjective(k, 1.0 / sys.lambda_degrees[k]);
    problem.SetBounds(k, 0.0, 1.0);
  }
  for (int r = 0; r < basis.num_coefficients(); ++r) {
    const bool cosine = r <= basis.order();
    const AffineForm* form = cosine ? &sys.reduced_coefficients[r] : nullptr;
    problem.AddEquality(cosine ? form->constant : 0.0);
    if (!cosine) continue;
    for (int k = 0; k < num_lambda; ++k) {
      if (form->gradient[k] != 0.0) {
        problem.AddFreeCoefficient(r, k, -form->gradient[k]);
      }
    }
  }
  AddGramTerms(problem, basis, 0);
  const int sum_row = problem.AddEquality(1.0);
  for (int k = 0; k < num_lambda; ++k) {
    problem.AddFreeCoefficient(sum_row, k, 1.0);
  }
  return RateProgram{std::move(problem), std::move(sys), rho, channel,
                     dv_max};
}

FeasibilityCertificate MakeCertificate(const std::function<double(double)>& f,
                                       const Eigen::MatrixXd& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    throw std::invalid_argument("Gram matrix must be square and non-empty");
  }
  const TrigonometricBasis basis(static_cast<int>(gram.rows()) - 1);
  FeasibilityCertificate cert;
  cert.gram = 0.5 * (gram + gram.transpose());
  const Eigen::MatrixXd v = basis.MonomialMatrix();
  cert.monomial_gram = v.transpose() * cert.gram * v;
  cert.min_eigenvalue = CheckPsd(cert.gram, 0.0).min_eigenvalue;
  const std::vector<double> target = CosineCoefficients(f, basis.order());
  const Eigen::VectorXd rec = basis.Reconstruct(cert.gram);
  double residual = 0.0;
  for (int r = 0; r < basis.num_coefficients(); ++r) {
    const double want = r <= basis.order() ? target[r] : 0.0;
    residual = std::max(residual, std::abs(want - rec[r]));
  }
  cert.reconstruction_residual = residual;
  return cert;
}

double GramResidual(const Polynomial& pi, const Eigen::MatrixXd& gram) {
  const int n = static_cast<int>(gram.rows());
  if (gram.cols() != n || n == 0) {
    throw std::invalid_argument("Gram matrix must be square and non-empty");
  }
  if (pi.degree() > 2 * (n - 1)) {
    throw std::invalid_argument("polynomial degree " +
                                std::to_string(pi.degree()) +
                                " exceeds 2*(order-1) = " +
                                std::to_string(2 * (n - 1)));
  }
  double residual = 0.0;
  for (int l = 0; l <= 2 * (n - 1); ++l) {
    double sum = 0.0;
    for (int i = std::max(0, l - n + 1); i <= std::min(l, n - 1); ++i) {
      sum += gram(i, l - i);
    }
    residual = std::max(residual, std::abs(pi[l] - sum));
  }
  return residual;
}

DegreeDistribution CleanLambda(const std::vector<double>& values,
                               const std::vector<int>& degrees, int dv_max) {
  std::vector<double> lambda = values;
  double clean_sum = 0.0;
  for (double& v : lambda) {
    if (v < kLambdaCleanupThreshold) v = 0.0;
    clean_sum += v;
  }
  // The renormalization factor is what moves the design.
  if (clean_sum <= 0.0 || std::abs(clean_sum - 1.0) > 1e-6) {
    throw std::runtime_error("lambda renormalization drift " +
                             std::to_string(clean_sum - 1.0) +
                             " exceeds 1e-6");
  }
  std::map<int, double> coefficients;
  for (size_t k = 0; k < lambda.size(); ++k) {
    coefficients[degrees[k]] = lambda[k] / clean_sum;
  }
  return DegreeDistribution(coefficients, DistributionKind::kVariable, dv_max);
}

bool IsUsable(const SdpSolution& solution) {
  switch (solution.status) {
    case SolveStatus::kOptimal:
      return true;
    case SolveStatus::kMaxIterations:
    case SolveStatus::kNumericalFailure: {
      const SolverOptions defaults;
      return solution.primal_residual <= 100 * defaults.tol_feas &&
             solution.dual_residual <= 100 * defaults.tol_feas &&
             solution.dual_gap_estimate <= 100 * defaults.tol_gap;
    }
    default:
      return false;
  }
}

SdpDesign ExtractDesign(const RateProgram& program,
                        const SdpSolution& solution) {
  if (!IsUsable(solution)) {
    throw NoDesignError(solution.status,
                        "solver returned " + ToString(solution.status) +
                            " after " + std::to_string(solution.iterations) +
                            " iterations");
  }
  const GramConstraintSystem& sys = program.system;
  DegreeDistribution lambda_dd =
      CleanLambda(solution.free_values, sys.lambda_degrees, program.dv_max);
  std::vector<double> lambda;
  for (int d : sys.lambda_degrees) lambda.push_back(lambda_dd.coefficient(d));
  const Eigen::MatrixXd shift = TrigonometricBasis(sys.q).SineShift();
  const Eigen::MatrixXd gram =
      shift * solution.psd_matrix * shift.transpose();
  SdpDesign out{
      MakeDesignResult(lambda_dd, program.rho, program.channel),
      MakeCertificate(DeFunction(sys.lambda_degrees, lambda, program.rho,
                                 program.channel.epsilon()),
                      gram),
      InverseAverage(lambda_dd), solution};
  out.design.certificate_ok = out.certificate.accepted();
  return out;
}

SdpDesign OptimizeRate(const DegreeDistribution& rho,
                       const ErasureChannel& channel, int dv_max,
                       const SolverOptions& options) {
  return SolveRateProgram(BuildRateSdp(rho, channel, dv_max), options);
}

SdpDesign SolveRateProgram(const RateProgram& program,
                           const SolverOptions& options) {
  SdpSolution solution = Solve(program.problem, options);
  // Inactive degrees decay like the duality gap. Values stuck between the
  // cleanup threshold and 1e-4 get one tighter re-solve so that clamping
  // sees a clean support.
  const bool ambiguous =
      IsUsable(solution) &&
      std::any_of(solution.free_values.begin(), solution.free_values.end(),
                  [](double v) {
                    return v > kLambdaCleanupThreshold && v < 1e-4;
                  });
  if (ambiguous) {
    SolverOptions tight = options;
    tight.tol_feas = std::min(options.tol_feas, 1e-10);
    tight.tol_gap = std::min(options.tol_gap, 1e-11);
    SdpSolution refined = Solve(program.problem, tight);
    if (IsUsable(refined)) solution = std::move(refined);
  }
  return ExtractDesign(program, solution);
}

NonnegativityResult CheckNonnegOn01(const Polynomial& p,
                                    const SolverOptions& options) {
  const int q = std::max(p.degree(), 0);
  const auto f = [&p](double x) { return p(x); };
  if (q == 0) {
    if (p[0] >= 0.0) {
      return MakeCertificate(f, Eigen::MatrixXd::Constant(1, 1, p[0]));
    }
    return RefutationWitness{0.0, p[0]};
  }

  const TrigonometricBasis basis(q);
  const std::vector<double> target = CosineCoefficients(f, q);
  // Variable 0 is gamma, entering the constant coefficient.
  SdpProblem problem(1, basis.size(), BlockStructure::kDense);
  problem.SetObjective(0, 1.0);
  for (int r = 0; r < basis.num_coefficients(); ++r) {
    problem.AddEquality(r <= q ? target[r] : 0.0);
  }
  problem.AddFreeCoefficient(basis.CosineRow(0), 0, 1.0);
  AddGramTerms(problem, basis, 0);

  const SdpSolution sol = Solve(problem, options);
  double gamma = std::numeric_limits<double>::quiet_NaN();
  if (IsUsable(sol)) {
    gamma = sol.free_values[0];
    Eigen::MatrixXd gram = sol.psd_matrix;
    if (gamma > 0.0) {
      gram += gamma / basis.IdentityValue() *
              Eigen::MatrixXd::Identity(basis.size(), basis.size());
    }
    FeasibilityCertificate cert = MakeCertificate(f, gram);
    if (cert.accepted()) return cert;
  }
  if (auto witness = SearchWitness(p)) return *witness;
  std::ostringstream msg;
  msg << "no certificate or witness for " << p.ToString()
      << ": solver status " << ToString(sol.status) << ", gamma " << gamma;
  throw CertificationError(msg.str());
}

FamilyBound ExtremizeNonnegFamily(const Polynomial& base,
                                  const Polynomial& direction, Sense sense,
                                  const SolverOptions& options) {
  const int q = std::max({base.degree(), direction.degree(), 1});
  const TrigonometricBasis basis(q);
  const auto f0 = [&base](double x) { return base(x); };
  const auto f1 = [&direction](double x) { return direction(x); };
  const std::vector<double> c0 = CosineCoefficients(f0, q);
  const std::vector<double> c1 = CosineCoefficients(f1, q);
  // Gram form = base + t direction, i.e. Gram form - t direction = base.
  SdpProblem problem(1, basis.size(), BlockStructure::kDense);
  problem.SetObjective(0, sense == Sense::kMaximize ? 1.0 : -1.0);
  for (int r = 0; r < basis.num_coefficients(); ++r) {
    problem.AddEquality(r <= q ? c0[r] : 0.0);
    if (r <= q && c1[r] != 0.0) problem.AddFreeCoefficient(r, 0, -c1[r]);
  }
  AddGramTerms(problem, basis, 0);

  const SdpSolution sol = Solve(problem, options);
  FamilyBound out;
  out.status = sol.status;
  if (sol.status != SolveStatus::kOptimal) return out;
  out.value = sol.free_values[0];
  const double t = out.value;
  out.certificate = MakeCertificate(
      [&base, &direction, t](double x) { return base(x) + t * direction(x); },
      sol.psd_matrix);
  return out;
}

}  // namespace ldpcsdp
