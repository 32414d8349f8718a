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

#include "ldpcsdp/desim.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldpcsdp/polyops.h"

namespace ldpcsdp {
namespace {

// 1 - rho(1 - x) expanded in powers of x. Horner on this form keeps full
// relative accuracy for small x, where the iteration spends most steps.
Polynomial RhoComplement(const DegreeDistribution& rho) {
  Polynomial c = Compose(ToPolynomial(rho), Polynomial{1.0, -1.0});
  c *= -1.0;
  c += Polynomial::Constant(1.0);
  std::vector<double> coeffs(c.degree() + 1);
  for (int k = 1; k <= c.degree(); ++k) coeffs[k] = c[k];
  return Polynomial(std::move(coeffs));
}

class DeMap {
 public:
  DeMap(const DegreeDistribution& lambda, const DegreeDistribution& rho,
        double eps)
      : lambda_(ToPolynomial(lambda)),
        rho_bar_(RhoComplement(rho)),
        rho_slope_(rho.DerivativeAtOne()),
        eps_(eps) {}

  double operator()(double x) const { return eps_ * lambda_(rho_bar_(x)); }

  // eps lambda(rho'(1) x) / x, an upper bound on f(y) / y for all y <= x.
  double ContractionBound(double x) const {
    return eps_ * lambda_(rho_slope_ * x) / x;
  }

 private:
  Polynomial lambda_;
  Polynomial rho_bar_;
  double rho_slope_;
  double eps_;
};

bool Stalled(double x, double next) {
  return std::abs(next - x) <= 1e-15 * x;
}

}  // namespace

DeReport DeTrajectory(const DegreeDistribution& lambda,
                      const DegreeDistribution& rho,
                      const ErasureChannel& channel, int max_iter,
                      double exit_tol) {
  const DeMap f(lambda, rho, channel.epsilon());
  DeReport report;
  double x = channel.epsilon();
  report.trajectory.push_back(x);
  int t = 0;
  while (x > exit_tol && t < max_iter) {
    const double next = f(x);
    ++t;
    report.trajectory.push_back(next);
    const bool stalled = Stalled(x, next);
    x = next;
    if (stalled) break;
  }
  report.final_value = x;
  report.iterations_used = t;
  report.converged_to_zero = x <= exit_tol;
  return report;
}

bool DeConverges(const DegreeDistribution& lambda,
                 const DegreeDistribution& rho, double eps, long max_iter) {
  const DeMap f(lambda, rho, eps);
  double x = eps;
  for (long t = 0; t < max_iter; ++t) {
    if (x <= kDefaultExitTolerance) return true;
    // Checked sparingly; the bound only becomes useful once x is small.
    if (t % 64 == 0 && f.ContractionBound(x) < 1.0) return true;
    const double next = f(x);
    if (Stalled(x, next)) return next <= kDefaultExitTolerance;
    x = next;
  }
  return false;
}

double BpThreshold(const DegreeDistribution& lambda,
                   const DegreeDistribution& rho, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (DeConverges(lambda, rho, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

VerificationReport VerifyDesign(const DesignResult& design, int grid_size) {
  if (grid_size < 1) throw std::invalid_argument("grid_size must be >= 1");
  VerificationReport report;
  const double eps = design.channel.epsilon();
  report.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= grid_size; ++k) {
    // k / grid_size is exactly 1 at the end, so x never exceeds eps.
    const double x = eps * (static_cast<double>(k) / grid_size);
    const double m = DeMargin(design.lambda, design.rho, design.channel, x);
    if (m < report.min_margin) {
      report.min_margin = m;
      report.argmin_margin = x;
    }
  }
  report.threshold = BpThreshold(design.lambda, design.rho);
  report.rate = CodeRate(design.lambda, design.rho);
  report.rate_error = std::abs(report.rate - design.rate);
  report.margin_ok = report.min_margin >= -1e-6;
  report.threshold_ok = report.threshold >= eps - 1e-4;
  report.rate_ok = report.rate_error <= 1e-10;
  return report;
}

}  // namespace ldpcsdp
