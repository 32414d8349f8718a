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

#include "ldpcsdp/baseline_lp.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ldpcsdp/sosrep.h"

namespace ldpcsdp {

std::string ToString(GridScheme scheme) {
  return scheme == GridScheme::kUniform ? "uniform" : "clustered";
}

DiscretizationGrid::DiscretizationGrid(std::vector<double> points,
                                       GridScheme scheme, double eps)
    : points_(std::move(points)), scheme_(scheme) {
  if (points_.empty()) throw std::invalid_argument("grid has no points");
  for (size_t k = 0; k < points_.size(); ++k) {
    const double x = points_[k];
    if (!(x > 0.0) || x > eps) {
      throw std::invalid_argument("grid point outside (0, eps]");
    }
    if (k > 0 && !(x > points_[k - 1])) {
      throw std::invalid_argument("grid points not strictly increasing");
    }
  }
}

DiscretizationGrid DiscretizationGrid::Uniform(double eps, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be >= 1");
  std::vector<double> points(n);
  for (int k = 1; k <= n; ++k) {
    points[k - 1] = eps * (static_cast<double>(k) / n);
  }
  points.back() = eps;
  return DiscretizationGrid(std::move(points), GridScheme::kUniform, eps);
}

DiscretizationGrid DiscretizationGrid::Clustered(double eps, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be >= 1");
  std::vector<double> points(n);
  for (int k = 1; k <= n; ++k) {
    points[k - 1] = eps * 0.5 * (1.0 - std::cos(std::numbers::pi * k / n));
  }
  points.back() = eps;
  return DiscretizationGrid(std::move(points), GridScheme::kClustered, eps);
}

BaselineDesign DiscretizedOptimize(const DegreeDistribution& rho,
                                   const ErasureChannel& channel, int dv_max,
                                   const DiscretizationGrid& grid,
                                   const SolverOptions& options) {
  if (dv_max < 2) {
    throw std::invalid_argument("dv_max must be at least 2, got " +
                                std::to_string(dv_max));
  }
  const int num_lambda = dv_max - 1;
  const double eps = channel.epsilon();
  SdpProblem problem(num_lambda, grid.size(), BlockStructure::kDiagonal);
  std::vector<int> degrees;
  for (int k = 0; k < num_lambda; ++k) {
    degrees.push_back(k + 2);
    problem.SetObjective(k, 1.0 / (k + 2));
    problem.SetBounds(k, 0.0, 1.0);
  }
  for (int g = 0; g < grid.size(); ++g) {
    const double x = grid.points()[g];
    const double e = rho.Complement(x);
    const int row = problem.AddEquality(x / eps);
    for (int k = 0; k < num_lambda; ++k) {
      problem.AddFreeCoefficient(row, k, std::pow(e, k + 1));
    }
    problem.AddMatrixCoefficient(row, g, g, 1.0);
  }
  const int sum_row = problem.AddEquality(1.0);
  for (int k = 0; k < num_lambda; ++k) {
    problem.AddFreeCoefficient(sum_row, k, 1.0);
  }

  SdpSolution solution = Solve(problem, options);
  if (!IsUsable(solution)) {
    throw NoDesignError(solution.status,
                        "baseline LP: solver returned " +
                            ToString(solution.status));
  }
  DesignResult design = MakeDesignResult(
      CleanLambda(solution.free_values, degrees, dv_max), rho, channel);
  design.grid_feasible_only = true;
  const double objective = solution.objective_value;
  return BaselineDesign{std::move(design), objective, std::move(solution)};
}

double MaxContinuousViolation(const DegreeDistribution& lambda,
                              const DegreeDistribution& rho,
                              const ErasureChannel& channel, int samples) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const double eps = channel.epsilon();
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double x = eps * (static_cast<double>(k) / samples);
    worst = std::max(worst, eps * lambda(rho.Complement(x)) - x);
  }
  return worst;
}

std::vector<SweepRow> GridSweep(const DegreeDistribution& rho,
                                const ErasureChannel& channel, int dv_max,
                                const std::vector<int>& n_values,
                                const SolverOptions& options) {
  if (n_values.empty()) throw std::invalid_argument("empty N list");
  std::vector<SweepRow> rows;
  for (int n : n_values) {
    const BaselineDesign b = DiscretizedOptimize(
        rho, channel, dv_max, DiscretizationGrid::Uniform(channel.epsilon(), n),
        options);
    rows.push_back(SweepRow{
        n, b.objective, b.design.rate,
        MaxContinuousViolation(b.design.lambda, rho, channel),
        b.design.lambda});
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows) {
  // Shortest representation that round-trips.
  const auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  std::ostringstream out;
  out << "N,objective,rate,max_violation,lambda_json\n";
  for (const SweepRow& r : rows) {
    out << r.n << ',' << num(r.objective) << ',' << num(r.rate) << ','
        << num(r.max_violation) << ",\"{";
    bool first = true;
    for (const auto& [d, v] : r.lambda.coefficients()) {
      if (!first) out << ',';
      first = false;
      out << "\"\"" << d << "\"\":" << num(v);
    }
    out << "}\"\n";
  }
  return out.str();
}

}  // namespace ldpcsdp
