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

// Dense univariate polynomials over doubles, plus the two constructions the
// nonnegativity certificate needs: the DE polynomial
//   P(x) = x - lambda(1 - rho(1 - eps x))
// and the interval-to-line transform
//   Pi(t) = (1 + t^2)^q P(t^2 / (1 + t^2)).

#ifndef LDPCSDP_POLYOPS_H_
#define LDPCSDP_POLYOPS_H_

#include <initializer_list>
#include <string>
#include <vector>

#include "ldpcsdp/ensemble.h"

namespace ldpcsdp {

// Coefficients in ascending powers; trailing zeros are trimmed, so the zero
// polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  Polynomial(std::initializer_list<double> coefficients);

  static Polynomial Monomial(int power, double coefficient = 1.0);
  static Polynomial Constant(double value);

  const std::vector<double>& coefficients() const { return coefficients_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  // Coefficient of x^power; zero beyond the degree.
  double operator[](int power) const;

  // Horner evaluation.
  double operator()(double x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scalar);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  bool operator==(const Polynomial&) const = default;

  // "p0 + p1*x + p2*x^2 + ..." with zero terms skipped.
  std::string ToString() const;

 private:
  void Trim();
  std::vector<double> coefficients_;
};

Polynomial Pow(const Polynomial& p, int exponent);

// outer(inner(x)), by Horner's scheme over polynomials.
Polynomial Compose(const Polynomial& outer, const Polynomial& inner);

// Induced polynomial sum_d c_d x^(d-1) of a degree distribution.
Polynomial ToPolynomial(const DegreeDistribution& dd);

// The polynomial g_i(x) = (1 - rho(1 - eps x))^(i-1); P is x minus the
// lambda-weighted sum of these.
Polynomial ErasureTransferPower(const DegreeDistribution& rho,
                                const ErasureChannel& channel, int degree);

// P(x) = x - lambda(1 - rho(1 - eps x)) by exact composition. p_0 is zero
// identically.
Polynomial DePolynomial(const DegreeDistribution& lambda,
                        const DegreeDistribution& rho,
                        const ErasureChannel& channel);

// Independent route to the same coefficients for rho(x) = x^n: expands
// (1 - (1 - eps x)^n)^(i-1) by summing signed products of binomial
// coefficients over all compositions of k into i-1 positive parts.
Polynomial DePolynomialMonomialCheck(const DegreeDistribution& lambda, int n,
                                     const ErasureChannel& channel);
// Same, but takes the check distribution and rejects anything that is not
// a single monomial.
Polynomial DePolynomialMonomialCheck(const DegreeDistribution& lambda,
                                     const DegreeDistribution& rho,
                                     const ErasureChannel& channel);

// Pi(t) = sum_j p_j t^(2j) (1 + t^2)^(q-j) with q = deg(p). Odd coefficients
// are exactly zero. The zero polynomial maps to itself.
Polynomial PiTransform(const Polynomial& p);
// Same with an explicit q >= deg(p); needed when p's degree can drop for
// particular parameter values.
Polynomial PiTransform(const Polynomial& p, int q);

// Binomial coefficient as a double (exact up to 2^53).
double Binomial(int n, int k);

}  // namespace ldpcsdp

#endif  // LDPCSDP_POLYOPS_H_
