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

// Density-evolution oracle for the BEC: x_{t+1} = eps lambda(1 - rho(1 - x_t))
// from x_0 = eps. Used to verify designs independently of the optimizer.

#ifndef LDPCSDP_DESIM_H_
#define LDPCSDP_DESIM_H_

#include <vector>

#include "ldpcsdp/ensemble.h"

namespace ldpcsdp {

inline constexpr int kDefaultDeIterations = 5000;
inline constexpr double kDefaultExitTolerance = 1e-12;
// Iteration cap for a single bisection probe.
inline constexpr long kProbeIterations = 5000000;

struct DeReport {
  std::vector<double> trajectory;  // x_0 = eps, x_1, ...
  bool converged_to_zero = false;
  double final_value = 0.0;
  int iterations_used = 0;
};

// Iterates until x_t <= exit_tol, the step falls below 1e-15 x_t (a fixed
// point in double precision) or max_iter steps.
DeReport DeTrajectory(const DegreeDistribution& lambda,
                      const DegreeDistribution& rho,
                      const ErasureChannel& channel,
                      int max_iter = kDefaultDeIterations,
                      double exit_tol = kDefaultExitTolerance);

// True if DE converges to zero at erasure probability eps. Stops early once
// eps lambda(rho'(1) x) / x < 1, which bounds every later step by a fixed
// contraction. Probes that hit max_iter count as non-convergent.
bool DeConverges(const DegreeDistribution& lambda,
                 const DegreeDistribution& rho, double eps,
                 long max_iter = kProbeIterations);

// Largest eps in (0, 1) with DeConverges, by bisection to width tol.
// Returns the lower end of the final bracket.
double BpThreshold(const DegreeDistribution& lambda,
                   const DegreeDistribution& rho, double tol = 1e-5);

struct VerificationReport {
  double min_margin = 0.0;   // min over the grid of x/eps - lambda(1-rho(1-x))
  double argmin_margin = 0.0;
  double threshold = 0.0;
  double rate = 0.0;         // recomputed
  double rate_error = 0.0;   // |rate - design.rate|
  bool margin_ok = false;    // min_margin >= -1e-6
  bool threshold_ok = false; // threshold >= eps - 1e-4
  bool rate_ok = false;      // rate_error <= 1e-10
  bool passed() const { return margin_ok && threshold_ok && rate_ok; }
};

// Margin on grid_size uniform points of (0, eps], threshold and rate.
VerificationReport VerifyDesign(const DesignResult& design,
                                int grid_size = 100000);

}  // namespace ldpcsdp

#endif  // LDPCSDP_DESIM_H_
