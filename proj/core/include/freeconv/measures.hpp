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

// Probability measures on the positive half-line described by factored
// S-transforms, their free multiplicative convolution, and the polynomial
// resolvent equation  z w S(w) = 1 + w  with denominators and fractional
// powers cleared.

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "freeconv/polynomial.hpp"

namespace freeconv::measures {

/// Marchenko-Pastur factor 1/(1 + c w), c > 0 (rectangularity).
struct MpFactor {
  Rational c;
  friend bool operator==(const MpFactor&, const MpFactor&) = default;
};

/// Arcsine factor (w + 2) / (2 (1 + w)).
struct AsFactor {
  friend bool operator==(const AsFactor&, const AsFactor&) = default;
};

/// Arbitrary rational factor numer(w) / denom(w) with integer coefficients.
struct RationalFactor {
  Polynomial numer;
  Polynomial denom;
  friend bool operator==(const RationalFactor&, const RationalFactor&) = default;
};

using FactorKind = std::variant<MpFactor, AsFactor, RationalFactor>;

/// Validating constructors; throw DomainError on invalid parameters.
FactorKind mp(const Rational& c);
FactorKind arcsine();
FactorKind rational_factor(Polynomial numer, Polynomial denom);

/// The factor as an exact fraction (numerator, denominator).
std::pair<Polynomial, Polynomial> factor_fraction(const FactorKind& kind);

struct Factor {
  FactorKind kind;
  Rational exponent;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// S(w) = prod_i factor_i(w)^{exponent_i}. The empty product is the point
/// mass at 1 (S == 1).
class MeasureSpec {
 public:
  MeasureSpec() = default;
  explicit MeasureSpec(std::vector<Factor> factors);

  static MeasureSpec of(FactorKind kind, const Rational& exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  /// Text in the measure grammar, e.g. "as*mp(1)^(1/2)".
  std::string to_string() const;

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Evaluates S(w), principal branch for fractional exponents. Throws
/// PoleError when a factor is singular at w.
std::complex<double> s_eval(const MeasureSpec& spec, std::complex<double> w);

MeasureSpec boxtimes(const MeasureSpec& a, const MeasureSpec& b);

/// Free multiplicative power: every exponent is multiplied by s > 0.
MeasureSpec free_power(const MeasureSpec& a, const Rational& s);

/// P(w, z) = B(w) - z^q A(w). Every resolvent produced by build_resolvent has
/// this separable form; `q` is the clearing power (lcm of the exponent
/// denominators), so for q > 1 the root set contains q-1 spurious sheets.
class ResolventPolynomial {
 public:
  ResolventPolynomial(Polynomial b, Polynomial a, int clearing_power,
                      std::optional<MeasureSpec> source = std::nullopt);

  const Polynomial& z_free_part() const { return b_; }
  const Polynomial& z_part() const { return a_; }
  int clearing_power() const { return q_; }
  int w_degree() const { return std::max(b_.degree(), a_.degree()); }
  int z_degree() const { return q_; }
  const std::optional<MeasureSpec>& source() const { return source_; }

  /// Coefficient of w^i z^j.
  Rational coefficient(int i, int j) const;
  /// Dense coefficient matrix indexed [i][j] for w^i z^j.
  std::vector<std::vector<Rational>> coefficients() const;

  /// Ascending coefficients in w at a fixed complex z.
  std::vector<std::complex<double>> coefficients_at(std::complex<double> z) const;
  std::complex<double> operator()(std::complex<double> w, std::complex<double> z) const;

  /// m1 = lim z w(z) on the physical sheet: the positive root of
  /// t^q A_q = B(0), where A_q is the w^q coefficient of A.
  double first_moment() const;
  /// Exact m1 when it is rational.
  std::optional<Rational> exact_first_moment() const;

  std::string to_string() const;

  friend bool operator==(const ResolventPolynomial& x, const ResolventPolynomial& y) {
    return x.b_ == y.b_ && x.a_ == y.a_ && x.q_ == y.q_;
  }

 private:
  Polynomial b_;
  Polynomial a_;
  int q_;
  std::optional<MeasureSpec> source_;
};

ResolventPolynomial build_resolvent(const MeasureSpec& spec);

using ComplexFunction = std::function<std::complex<double>(std::complex<double>)>;

struct FixedPointOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  double damping = 1.0;
};

/// R(y) from a Green's function through R(G(z)) + 1/G(z) = z, for small y.
std::complex<double> r_from_g(const ComplexFunction& g, std::complex<double> y,
                              const FixedPointOptions& opts = {});

/// S(y) from an R-transform: z = y S(y) is the composition inverse of
/// y = z R(z). Requires a nonzero first cumulant.
std::complex<double> s_from_r(const ComplexFunction& r, std::complex<double> y,
                              const FixedPointOptions& opts = {});

}  // namespace freeconv::measures
