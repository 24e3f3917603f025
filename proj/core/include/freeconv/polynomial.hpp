// Copyright 2026 The freeconv Authors
//
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

#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freeconv {

/// Arbitrary-precision rational (GMP).
using Rational = mpq_class;

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending powers. Always trimmed: the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> ascending);
  Polynomial(std::initializer_list<Rational> ascending);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i; zero outside the stored range.
  Rational coefficient(int i) const;
  const Rational& leading() const;
  /// Lowest power with a nonzero coefficient (-1 for zero).
  int order() const;

  Polynomial derivative() const;
  Polynomial pow(unsigned e) const;
  Polynomial monic() const;
  /// p(x + c), exact.
  Polynomial taylor_shift(const Rational& c) const;
  /// Order of vanishing at an exact point.
  int multiplicity_at(const Rational& r) const;

  Rational operator()(const Rational& x) const;
  std::complex<double> operator()(std::complex<double> x) const;
  std::vector<double> to_double() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero if both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// Yun's square-free factorisation. Element i holds the product of the
/// irreducible factors of multiplicity i+1 (monic; constant 1 when empty).
std::vector<Polynomial> squarefree_factors(const Polynomial& p);

std::string to_string(const Polynomial& p, std::string_view var = "w");

}  // namespace freeconv
