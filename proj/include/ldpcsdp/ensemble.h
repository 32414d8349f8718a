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

// Degree-distribution data model for LDPC ensembles on the binary erasure
// channel: edge-perspective polynomials, rate/capacity arithmetic, and the
// pointwise density-evolution margin.

#ifndef LDPCSDP_ENSEMBLE_H_
#define LDPCSDP_ENSEMBLE_H_

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ldpcsdp {

// Tolerance used for the sum-to-one and evaluate-at-one invariants.
inline constexpr double kNormalizationTolerance = 1e-12;

enum class DistributionKind { kVariable, kCheck };

std::string ToString(DistributionKind kind);

struct Violation {
  std::string invariant;      // e.g. "fraction < 0", "sum != 1"
  std::optional<int> degree;  // offending degree, if any
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string Summary() const;
};

// Checks an arbitrary candidate map against the DegreeDistribution
// invariants. When `max_degree` is unset the largest key is used.
ValidationReport Validate(const std::map<int, double>& coefficients,
                          std::optional<int> max_degree = std::nullopt);

// Edge-perspective degree distribution: coefficient d is the fraction of
// edges attached to degree-d nodes, and the induced polynomial is
// sum_d c_d x^(d-1). Immutable; construction enforces all invariants.
class DegreeDistribution {
 public:
  // Throws std::invalid_argument listing every violated invariant.
  DegreeDistribution(std::map<int, double> coefficients, DistributionKind kind,
                     std::optional<int> max_degree = std::nullopt);

  // Single-degree (regular) distribution {degree: 1}.
  static DegreeDistribution Regular(int degree, DistributionKind kind);

  const std::map<int, double>& coefficients() const { return coefficients_; }
  DistributionKind kind() const { return kind_; }
  int max_degree() const { return max_degree_; }

  // Largest degree carrying a nonzero fraction.
  int effective_max_degree() const;
  // Fraction at `degree`, zero when absent.
  double coefficient(int degree) const;

  // sum_d c_d x^(d-1).
  double operator()(double x) const;
  // 1 - f(1 - x) for the induced polynomial f, evaluated termwise with
  // expm1/log1p so it is exactly 0 at x = 0 and accurate for tiny x.
  double Complement(double x) const;
  // Derivative of the induced polynomial at x = 1, i.e. sum_d c_d (d-1).
  double DerivativeAtOne() const;

  // Dense ascending coefficients of the induced polynomial (index d-1).
  std::vector<double> PolynomialCoefficients() const;

  // Degrees carrying a fraction strictly above `threshold`.
  std::vector<int> Support(double threshold = 0.0) const;

  bool operator==(const DegreeDistribution&) const = default;

 private:
  std::map<int, double> coefficients_;
  DistributionKind kind_;
  int max_degree_;
};

// Erasure probability of a binary erasure channel, 0 < epsilon < 1.
class ErasureChannel {
 public:
  explicit ErasureChannel(double epsilon);
  double epsilon() const { return epsilon_; }
  double capacity() const { return 1.0 - epsilon_; }

 private:
  double epsilon_;
};

// A designed ensemble together with its figures of merit.
struct DesignResult {
  DegreeDistribution lambda;
  DegreeDistribution rho;
  ErasureChannel channel;
  double rate = 0.0;
  double capacity = 0.0;
  double delta = 0.0;
  // BP threshold; NaN until a density-evolution check has run.
  double threshold = std::numeric_limits<double>::quiet_NaN();
  bool certificate_ok = false;
  // Set for designs that only satisfy a finite set of DE constraints.
  bool grid_feasible_only = false;
};

// sum_d c_d / d, the reciprocal of the average node degree.
double InverseAverage(const DegreeDistribution& dd);

// 1 - InverseAverage(rho) / InverseAverage(lambda). Not clamped; may be
// negative for poorly matched pairs.
double CodeRate(const DegreeDistribution& lambda,
                const DegreeDistribution& rho);

struct CapacityGap {
  double capacity;
  double delta;  // 1 - rate / capacity
};

CapacityGap CapacityAndGap(double rate, const ErasureChannel& channel);

// x / epsilon - lambda(1 - rho(1 - x)) for x in [0, epsilon]. Nonnegative
// exactly where the density-evolution condition holds. Throws
// std::invalid_argument outside the domain.
double DeMargin(const DegreeDistribution& lambda,
                const DegreeDistribution& rho, const ErasureChannel& channel,
                double x);

// Assembles a DesignResult with rate, capacity and delta filled in.
DesignResult MakeDesignResult(DegreeDistribution lambda,
                              DegreeDistribution rho, ErasureChannel channel);

}  // namespace ldpcsdp

#endif  // LDPCSDP_ENSEMBLE_H_
