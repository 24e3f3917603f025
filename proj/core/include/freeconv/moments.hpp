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

// Exact moments and free cumulants, plus numeric moments of densities and
// samples.

#include <vector>

#include "freeconv/measures.hpp"
#include "freeconv/resolvent.hpp"

namespace freeconv::moments {

/// m_0 .. m_K as exact rationals.
struct MomentSequence {
  std::vector<Rational> values;
  const Rational& operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }
  friend bool operator==(const MomentSequence&, const MomentSequence&) = default;
};

/// kappa_1 .. kappa_K; values[0] is kappa_1.
struct CumulantSequence {
  std::vector<Rational> values;
  const Rational& kappa(std::size_t n) const { return values.at(n - 1); }
  std::size_t size() const { return values.size(); }
  friend bool operator==(const CumulantSequence&, const CumulantSequence&) = default;
};

inline constexpr int kDefaultMaxOrder = 64;

/// binom((s+1) n, n) / (s n + 1) with the falling-factorial binomial.
Rational fuss_catalan(const Rational& s, int n);

/// Generalized binomial a (a-1) ... (a-n+1) / n!.
Rational binomial(const Rational& a, int n);

/// Expands the physical root w = u t(u), u = 1/z, of the resolvent
/// equation and reads m_{n+1} = [u^n] t. Needs a rational first moment.
/// Throws SeriesAmbiguity when the linear coefficient vanishes.
MomentSequence moments_from_resolvent(const measures::ResolventPolynomial& poly, int K);

/// Independent route through the S-transform series: chi(w) = w S(w) / (1 + w)
/// is the compositional inverse of psi(z) = sum_{n>=1} m_n z^n.
/// Requires factor(0)^exponent to be rational for every factor.
MomentSequence moments_from_s_transform(const measures::MeasureSpec& spec, int K);

/// Power series of S(w) to order K (exact).
std::vector<Rational> s_series(const measures::MeasureSpec& spec, int K);

/// Coefficients p_1 .. p_K (index 0 is p_0 = 0) of the compositional
/// inverse of c(w) = c_1 w + c_2 w^2 + ... (c[0] must be 0, c[1] != 0).
std::vector<Rational> series_reversion(const std::vector<Rational>& c, int K);

/// M(z) = 1 + sum_n kappa_n z^n M(z)^n, solved either way.
CumulantSequence cumulants_from_moments(const MomentSequence& m);
MomentSequence moments_from_cumulants(const CumulantSequence& k);

/// Determinants of the j x j Hankel matrices [m_{a+b}], j = 1..max_size.
std::vector<Rational> hankel_determinants(const MomentSequence& m, int max_size = 4);

/// m_0 .. m_K of a density curve (atom contributes to m_0 only).
std::vector<double> moments_from_density(const resolvent::DensityCurve& curve, int K);

/// Plain sample moments m_0 .. m_K of real values.
std::vector<double> sample_moments(const std::vector<double>& values, int K);

}  // namespace freeconv::moments
