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

#include "ldpcsdp/ensemble.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ldpcsdp {

std::string ToString(DistributionKind kind) {
  return kind == DistributionKind::kVariable ? "variable" : "check";
}

std::string ValidationReport::Summary() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i].message;
  }
  return out.str();
}

ValidationReport Validate(const std::map<int, double>& coefficients,
                          std::optional<int> max_degree) {
  ValidationReport report;
  auto add = [&report](std::string invariant, std::optional<int> degree,
                       std::string message) {
    report.violations.push_back(
        {std::move(invariant), degree, std::move(message)});
  };

  if (coefficients.empty()) {
    add("nonempty", std::nullopt, "distribution has no degrees");
    return report;
  }
  const int limit = max_degree.value_or(coefficients.rbegin()->first);
  if (limit < 2) {
    add("max_degree >= 2", std::nullopt,
        "max_degree = " + std::to_string(limit) + " < 2");
  }

  double sum = 0.0;
  bool all_finite = true;
  for (const auto& [degree, fraction] : coefficients) {
    const std::string where = " at degree " + std::to_string(degree);
    if (degree < 2) add("degree >= 2", degree, "degree < 2" + where);
    if (degree > limit) {
      add("degree <= max_degree", degree,
          "degree > max_degree (" + std::to_string(limit) + ")" + where);
    }
    if (!std::isfinite(fraction)) {
      add("fraction finite", degree, "fraction not finite" + where);
      all_finite = false;
      continue;
    }
    if (fraction < 0.0) add("fraction >= 0", degree, "fraction < 0" + where);
    if (fraction > 1.0) add("fraction <= 1", degree, "fraction > 1" + where);
    sum += fraction;
  }
  if (all_finite && std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sum = " << sum << " != 1";
    add("sum == 1", std::nullopt, msg.str());
  }
  return report;
}

DegreeDistribution::DegreeDistribution(std::map<int, double> coefficients,
                                       DistributionKind kind,
                                       std::optional<int> max_degree)
    : coefficients_(std::move(coefficients)), kind_(kind) {
  const ValidationReport report = Validate(coefficients_, max_degree);
  if (!report.ok()) {
    throw std::invalid_argument("invalid " + ToString(kind) +
                                " degree distribution: " + report.Summary());
  }
  max_degree_ = max_degree.value_or(coefficients_.rbegin()->first);
}

DegreeDistribution DegreeDistribution::Regular(int degree,
                                               DistributionKind kind) {
  return DegreeDistribution({{degree, 1.0}}, kind);
}

int DegreeDistribution::effective_max_degree() const {
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    if (it->second > 0.0) return it->first;
  }
  return coefficients_.rbegin()->first;  // unreachable: sum is 1
}

double DegreeDistribution::coefficient(int degree) const {
  const auto it = coefficients_.find(degree);
  return it == coefficients_.end() ? 0.0 : it->second;
}

double DegreeDistribution::operator()(double x) const {
  // Horner over the dense coefficient list; degrees are small.
  const std::vector<double> c = PolynomialCoefficients();
  double value = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) value = value * x + *it;
  return value;
}

double DegreeDistribution::Complement(double x) const {
  const double log_base = std::log1p(-x);
  double value = 0.0;
  for (const auto& [degree, fraction] : coefficients_) {
    value -= fraction * std::expm1((degree - 1) * log_base);
  }
  return value;
}

double DegreeDistribution::DerivativeAtOne() const {
  double value = 0.0;
  for (const auto& [degree, fraction] : coefficients_) {
    value += fraction * (degree - 1);
  }
  return value;
}

std::vector<double> DegreeDistribution::PolynomialCoefficients() const {
  std::vector<double> c(static_cast<size_t>(coefficients_.rbegin()->first), 0.0);
  for (const auto& [degree, fraction] : coefficients_) c[degree - 1] = fraction;
  return c;
}

std::vector<int> DegreeDistribution::Support(double threshold) const {
  std::vector<int> degrees;
  for (const auto& [degree, fraction] : coefficients_) {
    if (fraction > threshold) degrees.push_back(degree);
  }
  return degrees;
}

ErasureChannel::ErasureChannel(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream msg;
    msg << "erasure probability must lie in (0, 1), got " << epsilon;
    throw std::invalid_argument(msg.str());
  }
}

double InverseAverage(const DegreeDistribution& dd) {
  double sum = 0.0;
  for (const auto& [degree, fraction] : dd.coefficients()) {
    sum += fraction / degree;
  }
  return sum;
}

double CodeRate(const DegreeDistribution& lambda,
                const DegreeDistribution& rho) {
  return 1.0 - InverseAverage(rho) / InverseAverage(lambda);
}

CapacityGap CapacityAndGap(double rate, const ErasureChannel& channel) {
  const double capacity = channel.capacity();
  return {capacity, 1.0 - rate / capacity};
}

double DeMargin(const DegreeDistribution& lambda,
                const DegreeDistribution& rho, const ErasureChannel& channel,
                double x) {
  const double eps = channel.epsilon();
  if (!(x >= 0.0 && x <= eps)) {
    std::ostringstream msg;
    msg << "de_margin: x = " << x << " outside [0, " << eps << "]";
    throw std::invalid_argument(msg.str());
  }
  return x / eps - lambda(rho.Complement(x));
}

DesignResult MakeDesignResult(DegreeDistribution lambda,
                              DegreeDistribution rho, ErasureChannel channel) {
  const double rate = CodeRate(lambda, rho);
  const CapacityGap gap = CapacityAndGap(rate, channel);
  return DesignResult{std::move(lambda), std::move(rho), channel, rate,
                      gap.capacity, gap.delta};
}

}  // namespace ldpcsdp
