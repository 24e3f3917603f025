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

// Haagerup-Larsen machinery for isotropic (R-diagonal) random matrices:
// radial distribution of the complex spectrum from the S-transform of the
// squared modulus, single-ring radii, sums of Haar unitaries, and the
// square-modulus and rescaling identities for Green's functions.

#include <complex>
#include <vector>

#include "freeconv/measures.hpp"
#include "freeconv/moments.hpp"

namespace freeconv::isotropic {

using cplx = std::complex<double>;
using measures::ComplexFunction;

struct RadialProfile {
  std::vector<double> r;
  std::vector<double> F;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
};

/// Fraction of eigenvalues inside radius r: solves S(F - 1) = 1/r^2 for F
/// by bisection, 0 inside the inner and 1 outside the outer radius.
/// Throws NonMonotoneError when S is not monotone on (-1, 0).
double radial_cdf(const measures::MeasureSpec& spec, double r);

/// (r_in, r_out): r_out = 1/sqrt(S(0)); r_in = 1/sqrt(S(-1+)), 0 when S
/// diverges at -1.
std::pair<double, double> ring_radii(const measures::MeasureSpec& spec);

RadialProfile radial_profile(const measures::MeasureSpec& spec, int n_points);

/// R-transform of |U_1 + ... + U_k|: k (sqrt(1 + 4 z^2) - 1) / (2 z),
/// evaluated as 2 k z / (sqrt(1 + 4 z^2) + 1).
cplx r_sum_unitaries(int k, cplx z);

/// Exact free cumulants kappa_1..kappa_K of the symmetrised |U_1 + ... + U_k|.
moments::CumulantSequence sum_unitaries_cumulants(int k, int K);

/// G_{H^2}(z) = G_H(sqrt z) / sqrt z for symmetric H.
cplx square_modulus_green(const ComplexFunction& g, cplx z);
ComplexFunction square_modulus_green(ComplexFunction g);

/// G_{P/a}(z) = a G_P(a z).
cplx rescale_green(const ComplexFunction& g, double a, cplx z);
ComplexFunction rescale_green(ComplexFunction g, double a);

/// Moment-level forms of the two identities: m_k(H^2) = m_2k(H) and
/// m_k(P/a) = m_k(P) / a^k.
moments::MomentSequence square_modulus_moments(const moments::MomentSequence& symmetric);
moments::MomentSequence rescale_moments(const moments::MomentSequence& m, const Rational& a);

/// Solves R(G) + 1/G = z by Newton's method from G = 1/z.
cplx green_from_r(const ComplexFunction& r, cplx z, const measures::FixedPointOptions& opts = {});

}  // namespace freeconv::isotropic
