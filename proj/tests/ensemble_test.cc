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
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace ldpcsdp {
namespace {

constexpr auto kVar = DistributionKind::kVariable;
constexpr auto kChk = DistributionKind::kCheck;

bool HasInvariant(const ValidationReport& r, const std::string& name) {
  for (const Violation& v : r.violations) {
    if (v.invariant == name) return true;
  }
  return false;
}

TEST(ValidateTest, AcceptsNormalizedMap) {
  EXPECT_TRUE(Validate({{2, 0.4}, {3, 0.6}}).ok());
  EXPECT_TRUE(Validate({{2, 0.25}, {7, 0.75}}, 10).ok());
}

TEST(ValidateTest, ReportsEveryViolation) {
  const ValidationReport r = Validate({{1, 0.5}, {3, -0.2}, {9, 1.4}}, 8);
  EXPECT_TRUE(HasInvariant(r, "degree >= 2"));
  EXPECT_TRUE(HasInvariant(r, "fraction >= 0"));
  EXPECT_TRUE(HasInvariant(r, "fraction <= 1"));
  EXPECT_TRUE(HasInvariant(r, "degree <= max_degree"));
  EXPECT_TRUE(HasInvariant(r, "sum == 1"));
  EXPECT_FALSE(r.Summary().empty());
}

TEST(ValidateTest, EdgeCases) {
  EXPECT_TRUE(HasInvariant(Validate({}), "nonempty"));
  EXPECT_TRUE(HasInvariant(Validate({{2, NAN}}), "fraction finite"));
  EXPECT_TRUE(HasInvariant(Validate({{2, 0.5}, {3, 0.5 + 1e-9}}), "sum == 1"));
  EXPECT_TRUE(Validate({{2, 0.5}, {3, 0.5 + 1e-13}}).ok());
}

TEST(DegreeDistributionTest, ConstructionThrowsOnInvalid) {
  EXPECT_THROW(DegreeDistribution({{2, 0.7}}, kVar), std::invalid_argument);
  EXPECT_THROW(DegreeDistribution({{3, 1.0}}, kVar, 2), std::invalid_argument);
}

TEST(DegreeDistributionTest, Accessors) {
  const DegreeDistribution dd({{2, 0.4}, {3, 0.0}, {7, 0.6}}, kVar, 9);
  EXPECT_EQ(dd.max_degree(), 9);
  EXPECT_EQ(dd.effective_max_degree(), 7);
  EXPECT_EQ(dd.coefficient(5), 0.0);
  EXPECT_EQ(dd.Support(), (std::vector<int>{2, 7}));
  EXPECT_EQ(dd.Support(0.5), (std::vector<int>{7}));
  EXPECT_DOUBLE_EQ(dd.DerivativeAtOne(), 0.4 * 1 + 0.6 * 6);
  const std::vector<double> poly = dd.PolynomialCoefficients();
  ASSERT_EQ(poly.size(), 7u);
  EXPECT_EQ(poly[1], 0.4);
  EXPECT_EQ(poly[6], 0.6);
}

TEST(DegreeDistributionTest, EvaluationMatchesDirectPolynomial) {
  const DegreeDistribution dd({{2, 0.2}, {4, 0.3}, {6, 0.5}}, kChk);
  for (double x : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const double direct =
        0.2 * x + 0.3 * std::pow(x, 3) + 0.5 * std::pow(x, 5);
    EXPECT_NEAR(dd(x), direct, 1e-15);
    const double y = 1.0 - x;
    const double comp = 1.0 - (0.2 * y + 0.3 * std::pow(y, 3) +
                               0.5 * std::pow(y, 5));
    EXPECT_NEAR(dd.Complement(x), comp, 1e-15);
  }
  EXPECT_EQ(dd.Complement(0.0), 0.0);
  EXPECT_DOUBLE_EQ(dd(1.0), 1.0);
}

TEST(DegreeDistributionTest, ComplementIsAccurateNearZero) {
  const DegreeDistribution rho = DegreeDistribution::Regular(6, kChk);
  // 1 - (1 - x)^5 = 5x - 10x^2 + ... for tiny x.
  const double x = 1e-12;
  EXPECT_NEAR(rho.Complement(x) / x, 5.0, 1e-9);
}

TEST(RateTest, RegularThreeSix) {
  const auto lambda = DegreeDistribution::Regular(3, kVar);
  const auto rho = DegreeDistribution::Regular(6, kChk);
  EXPECT_NEAR(InverseAverage(lambda), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(CodeRate(lambda, rho), 0.5, 1e-15);
}

TEST(RateTest, IrregularAgainstNodePerspectiveCount) {
  // Edge fractions -> node counts per unit edge: c_d / d.
  const DegreeDistribution lambda({{2, 0.5}, {3, 0.5}}, kVar);
  const DegreeDistribution rho({{6, 1.0}}, kChk);
  const double vars = 0.5 / 2 + 0.5 / 3;
  const double checks = 1.0 / 6;
  EXPECT_NEAR(CodeRate(lambda, rho), 1.0 - checks / vars, 1e-15);
}

TEST(RateTest, RateMayBeNegative) {
  const auto lambda = DegreeDistribution::Regular(6, kVar);
  const auto rho = DegreeDistribution::Regular(3, kChk);
  EXPECT_LT(CodeRate(lambda, rho), 0.0);
}

TEST(CapacityTest, GapDefinition) {
  const CapacityGap g = CapacityAndGap(0.4922, ErasureChannel(0.49));
  EXPECT_NEAR(g.capacity, 0.51, 1e-15);
  EXPECT_NEAR(g.delta, 1.0 - 0.4922 / 0.51, 1e-15);
  EXPECT_THROW(ErasureChannel(0.0), std::invalid_argument);
  EXPECT_THROW(ErasureChannel(1.0), std::invalid_argument);
}

TEST(DeMarginTest, MatchesDirectFormula) {
  const auto lambda = DegreeDistribution::Regular(3, kVar);
  const auto rho = DegreeDistribution::Regular(6, kChk);
  const ErasureChannel ch(0.4);
  for (double x : {0.01, 0.2, 0.4}) {
    const double inner = 1.0 - std::pow(1.0 - x, 5);
    EXPECT_NEAR(DeMargin(lambda, rho, ch, x), x / 0.4 - inner * inner,
                1e-14);
  }
  EXPECT_THROW(DeMargin(lambda, rho, ch, 0.41), std::invalid_argument);
  EXPECT_THROW(DeMargin(lambda, rho, ch, -0.01), std::invalid_argument);
}

TEST(DesignResultTest, MakeFillsFiguresOfMerit) {
  const DesignResult d =
      MakeDesignResult(DegreeDistribution::Regular(3, kVar),
                       DegreeDistribution::Regular(6, kChk),
                       ErasureChannel(0.42));
  EXPECT_NEAR(d.rate, 0.5, 1e-15);
  EXPECT_NEAR(d.capacity, 0.58, 1e-15);
  EXPECT_NEAR(d.delta, 1.0 - 0.5 / 0.58, 1e-15);
  EXPECT_TRUE(std::isnan(d.threshold));
  EXPECT_FALSE(d.grid_feasible_only);
}

TEST(DegreeDistributionTest, RandomMapsRoundTripThroughValidate) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, double> m;
    double sum = 0.0;
    for (int d = 2; d <= 2 + trial % 9; ++d) sum += (m[d] = u(rng));
    for (auto& [d, v] : m) v /= sum;
    ASSERT_TRUE(Validate(m).ok());
    const DegreeDistribution dd(m, kVar);
    EXPECT_NEAR(dd(1.0), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace ldpcsdp
