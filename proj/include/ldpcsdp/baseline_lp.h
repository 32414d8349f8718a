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

// Discretized linear-programming baseline: the DE inequality is imposed only
// on a finite grid of (0, eps], giving a relaxation of the exact program.

#ifndef LDPCSDP_BASELINE_LP_H_
#define LDPCSDP_BASELINE_LP_H_

#include <string>
#include <vector>

#include "ldpcsdp/ensemble.h"
#include "ldpcsdp/sdpcore.h"

namespace ldpcsdp {

enum class GridScheme { kUniform, kClustered };

std::string ToString(GridScheme scheme);

class DiscretizationGrid {
 public:
  // Throws std::invalid_argument unless the points are strictly increasing,
  // nonempty and inside (0, eps].
  DiscretizationGrid(std::vector<double> points, GridScheme scheme,
                     double eps);

  // eps k / n, k = 1..n.
  static DiscretizationGrid Uniform(double eps, int n);
  // eps (1 - cos(pi k / n)) / 2, k = 1..n: dense near 0 and near eps.
  static DiscretizationGrid Clustered(double eps, int n);

  const std::vector<double>& points() const { return points_; }
  GridScheme scheme() const { return scheme_; }
  int size() const { return static_cast<int>(points_.size()); }

 private:
  std::vector<double> points_;
  GridScheme scheme_;
};

struct BaselineDesign {
  DesignResult design;  // grid_feasible_only is set
  double objective = 0.0;  // LP optimum of sum lambda_i / i
  SdpSolution solution;
};

// maximize sum lambda_i / i s.t. sum lambda_i = 1, lambda_i in [0, 1] and
// sum_i lambda_i (1 - rho(1 - x_k))^{i-1} <= x_k / eps on every grid point,
// posed as an SdpProblem with a diagonal block of slacks. Throws
// NoDesignError when the solver returns no usable point.
BaselineDesign DiscretizedOptimize(
    const DegreeDistribution& rho, const ErasureChannel& channel, int dv_max,
    const DiscretizationGrid& grid,
    const SolverOptions& options = SolverOptions());

// max(0, max_x eps lambda(1 - rho(1 - x)) - x) over `samples` uniform points
// of (0, eps].
double MaxContinuousViolation(const DegreeDistribution& lambda,
                              const DegreeDistribution& rho,
                              const ErasureChannel& channel,
                              int samples = 100000);

struct SweepRow {
  int n = 0;
  double objective = 0.0;
  double rate = 0.0;
  double max_violation = 0.0;
  DegreeDistribution lambda;
};

// One row per N with a uniform grid of N points. Throws
// std::invalid_argument for an empty list.
std::vector<SweepRow> GridSweep(const DegreeDistribution& rho,
                                const ErasureChannel& channel, int dv_max,
                                const std::vector<int>& n_values,
                                const SolverOptions& options = SolverOptions());

// Header "N,objective,rate,max_violation,lambda_json", one line per row.
std::string SweepCsv(const std::vector<SweepRow>& rows);

}  // namespace ldpcsdp

#endif  // LDPCSDP_BASELINE_LP_H_
