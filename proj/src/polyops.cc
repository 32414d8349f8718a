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

#include "ldpcsdp/polyops.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace ldpcsdp {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  Trim();
}

Polynomial::Polynomial(std::initializer_list<double> coefficients)
    : coefficients_(coefficients) {
  Trim();
}

Polynomial Polynomial::Monomial(int power, double coefficient) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<double> c(static_cast<size_t>(power) + 1, 0.0);
  c[power] = coefficient;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::Constant(double value) { return Polynomial({value}); }

void Polynomial::Trim() {
  while (!coefficients_.empty() && coefficients_.back() == 0.0) {
    coefficients_.pop_back();
  }
}

double Polynomial::operator[](int power) const {
  if (power < 0 || power > degree()) return 0.0;
  return coefficients_[power];
}

double Polynomial::operator()(double x) const {
  double value = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    value = value * x + *it;
  }
  return value;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(other.coefficients_.size(), 0.0);
  }
  for (size_t i = 0; i < other.coefficients_.size(); ++i) {
    coefficients_[i] += other.coefficients_[i];
  }
  Trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coefficients_.size() > coefficients_.size()) {
    coefficients_.resize(other.coefficients_.size(), 0.0);
  }
  for (size_t i = 0; i < other.coefficients_.size(); ++i) {
    coefficients_[i] -= other.coefficients_[i];
  }
  Trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double scalar) {
  for (double& c : coefficients_) c *= scalar;
  Trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<double> c(a.coefficients_.size() + b.coefficients_.size() - 1,
                        0.0);
  for (size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (size_t j = 0; j < b.coefficients_.size(); ++j) {
      c[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return Polynomial(std::move(c));
}

std::string Polynomial::ToString() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  out.precision(10);
  bool first = true;
  for (int j = 0; j <= degree(); ++j) {
    const double c = coefficients_[j];
    if (c == 0.0) continue;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << std::abs(c);
    if (j == 1) out << "*x";
    if (j > 1) out << "*x^" << j;
  }
  return out.str();
}

Polynomial Pow(const Polynomial& p, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial result = Polynomial::Constant(1.0);
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Compose(const Polynomial& outer, const Polynomial& inner) {
  Polynomial result;
  const auto& c = outer.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    result = result * inner + Polynomial::Constant(*it);
  }
  return result;
}

Polynomial ToPolynomial(const DegreeDistribution& dd) {
  return Polynomial(dd.PolynomialCoefficients());
}

Polynomial ErasureTransferPower(const DegreeDistribution& rho,
                                const ErasureChannel& channel, int degree) {
  if (degree < 1) throw std::invalid_argument("node degree must be >= 1");
  const Polynomial shifted({1.0, -channel.epsilon()});  // 1 - eps x
  Polynomial base = Polynomial::Constant(1.0) - Compose(ToPolynomial(rho),
                                                        shifted);
  // The constant term is 1 - sum(rho_j), zero by normalization; drop the
  // rounding residue so P(0) = 0 holds exactly.
  std::vector<double> c = base.coefficients();
  if (!c.empty()) c[0] = 0.0;
  return Pow(Polynomial(std::move(c)), degree - 1);
}

Polynomial DePolynomial(const DegreeDistribution& lambda,
                        const DegreeDistribution& rho,
                        const ErasureChannel& channel) {
  Polynomial p = Polynomial::Monomial(1);
  for (const auto& [degree, fraction] : lambda.coefficients()) {
    if (fraction == 0.0) continue;
    p -= fraction * ErasureTransferPower(rho, channel, degree);
  }
  return p;
}

namespace {

// Sums prod_l C(n, parts_l) over all (parts_1..parts_m) in [1, n]^m,
// bucketed by the total k = sum parts_l. Index k of the result.
std::vector<double> CompositionSums(int n, int m) {
  std::vector<double> sums(static_cast<size_t>(n) * m + 1, 0.0);
  if (m == 0) {
    sums[0] = 1.0;
    return sums;
  }
  std::vector<int> parts(m, 1);
  while (true) {
    double product = 1.0;
    int total = 0;
    for (int part : parts) {
      product *= Binomial(n, part);
      total += part;
    }
    sums[total] += product;
    int pos = 0;
    while (pos < m && parts[pos] == n) parts[pos++] = 1;
    if (pos == m) break;
    ++parts[pos];
  }
  return sums;
}

}  // namespace

Polynomial DePolynomialMonomialCheck(const DegreeDistribution& lambda, int n,
                                     const ErasureChannel& channel) {
  if (n < 1) throw std::invalid_argument("monomial check exponent must be >= 1");
  const double eps = channel.epsilon();
  const int max_power = n * (lambda.max_degree() - 1);
  std::vector<double> p(static_cast<size_t>(max_power) + 1, 0.0);
  if (max_power >= 1) p[1] = 1.0;
  for (const auto& [degree, fraction] : lambda.coefficients()) {
    if (fraction == 0.0) continue;
    const int m = degree - 1;
    const std::vector<double> sums = CompositionSums(n, m);
    for (int k = m; k <= n * m; ++k) {
      // phi_{k,m} = (-1)^(k+m) eps^k sum_{compositions} prod C(n, parts)
      const double sign = ((k + m) % 2 == 0) ? 1.0 : -1.0;
      const double phi = sign * std::pow(eps, k) * sums[k];
      p[k] -= fraction * phi;
    }
  }
  return Polynomial(std::move(p));
}

Polynomial DePolynomialMonomialCheck(const DegreeDistribution& lambda,
                                     const DegreeDistribution& rho,
                                     const ErasureChannel& channel) {
  const auto support = rho.Support();
  if (support.size() != 1) {
    throw std::invalid_argument(
        "monomial cross-check requires a single-degree check distribution");
  }
  return DePolynomialMonomialCheck(lambda, support.front() - 1, channel);
}

Polynomial PiTransform(const Polynomial& p) {
  if (p.is_zero()) return Polynomial();
  return PiTransform(p, p.degree());
}

Polynomial PiTransform(const Polynomial& p, int q) {
  if (p.is_zero()) return Polynomial();
  if (q < p.degree()) {
    throw std::invalid_argument("pi transform: q below polynomial degree");
  }
  std::vector<double> pi(2 * static_cast<size_t>(q) + 1, 0.0);
  for (int j = 0; j <= p.degree(); ++j) {
    const double pj = p[j];
    if (pj == 0.0) continue;
    // p_j t^(2j) (1 + t^2)^(q-j) = sum_r C(q-j, r) p_j t^(2j+2r)
    for (int r = 0; r <= q - j; ++r) {
      pi[2 * (j + r)] += Binomial(q - j, r) * pj;
    }
  }
  return Polynomial(std::move(pi));
}

double Binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 60) {
    std::uint64_t value = 1;
    for (int i = 1; i <= k; ++i) {
      value = value * static_cast<std::uint64_t>(n - k + i) / i;
    }
    return static_cast<double>(value);
  }
  long double value = 1.0L;
  for (int i = 1; i <= k; ++i) value = value * (n - k + i) / i;
  return static_cast<double>(std::round(value));
}

}  // namespace ldpcsdp
