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

#include "freeconv/isotropic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "freeconv/errors.hpp"

namespace freeconv::isotropic {
namespace {

double s_real(const measures::MeasureSpec& spec, double w) {
  const cplx s = measures::s_eval(spec, cplx(w, 0.0));
  return s.real();
}

}  // namespace

std::pair<double, double> ring_radii(const measures::MeasureSpec& spec) {
  const double s0 = s_real(spec, 0.0);
  if (!(s0 > 0.0)) throw DomainError("ring_radii: S(0) must be positive");
  const double r_out = 1.0 / std::sqrt(s0);

  // Order of S at w = -1 and the finite part of each factor there.
  const Polynomial one_plus_w({Rational(1), Rational(1)});
  Rational order = 0;
  double finite = 1.0;
  for (const auto& f : spec.factors()) {
    auto [num, den] = measures::factor_fraction(f.kind);
    const int on = num.multiplicity_at(Rational(-1));
    const int od = den.multiplicity_at(Rational(-1));
    for (int i = 0; i < on; ++i) num = divmod(num, one_plus_w).first;
    for (int i = 0; i < od; ++i) den = divmod(den, one_plus_w).first;
    order += Rational(on - od) * f.exponent;
    const double base = Rational(num(Rational(-1)) / den(Rational(-1))).get_d();
    finite *= std::pow(base, f.exponent.get_d());
  }
  if (order < 0) return {0.0, r_out};
  if (order > 0 || !(finite > 0.0) || !std::isfinite(finite))
    throw DomainError("ring_radii: S(-1+) is not finite and positive");
  return {1.0 / std::sqrt(finite), r_out};
}

double radial_cdf(const measures::MeasureSpec& spec, double r) {
  if (!(r >= 0.0)) throw DomainError("radial_cdf: r must be nonnegative");
  const auto [r_in, r_out] = ring_radii(spec);
  if (r <= r_in) return 0.0;
  if (r >= r_out) return 1.0;

  // S(F - 1) on a pre-scan grid must be strictly monotone.
  const int scan = 64;
  double prev = 0.0;
  int direction = 0;
  for (int i = 1; i <= scan; ++i) {
    const double F = static_cast<double>(i) / scan;
    double s;
    try {
      s = s_real(spec, F - 1.0);
    } catch (const PoleError&) {
      throw NonMonotoneError("radial_cdf: S has a pole on (-1, 0)");
    }
    if (i > 1) {
      const int d = s > prev ? 1 : (s < prev ? -1 : 0);
      if (d == 0 || (direction != 0 && d != direction))
        throw NonMonotoneError("radial_cdf: S is not strictly monotone on (-1, 0)");
      direction = d;
    }
    prev = s;
  }

  const double target = 1.0 / (r * r);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = s_real(spec, mid - 1.0) - target;
    // S decreasing in F: g > 0 means F too small.
    if ((direction < 0) == (g > 0.0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

RadialProfile radial_profile(const measures::MeasureSpec& spec, int n_points) {
  if (n_points < 2) throw DomainError("radial_profile: need at least 2 points");
  RadialProfile p;
  std::tie(p.inner_radius, p.outer_radius) = ring_radii(spec);
  for (int i = 0; i < n_points; ++i) {
    const double r = p.inner_radius + (p.outer_radius - p.inner_radius) * i / (n_points - 1);
    p.r.push_back(r);
    p.F.push_back(radial_cdf(spec, r));
  }
  return p;
}

cplx r_sum_unitaries(int k, cplx z) {
  if (k < 1) throw DomainError("r_sum_unitaries: k must be >= 1");
  return static_cast<double>(k) * 2.0 * z / (std::sqrt(1.0 + 4.0 * z * z) + 1.0);
}

moments::CumulantSequence sum_unitaries_cumulants(int k, int K) {
  if (k < 1) throw DomainError("sum_unitaries_cumulants: k must be >= 1");
  moments::CumulantSequence c;
  c.values.assign(static_cast<std::size_t>(std::max(K, 0)), Rational(0));
  Rational four_n = 1;
  for (int n = 1; 2 * n <= K; ++n) {
    four_n *= 4;
    c.values[2 * n - 1] = Rational(k) * moments::binomial(Rational(1, 2), n) * four_n / 2;
  }
  return c;
}

cplx square_modulus_green(const ComplexFunction& g, cplx z) {
  const cplx s = std::sqrt(z);
  return g(s) / s;
}

ComplexFunction square_modulus_green(ComplexFunction g) {
  return [g = std::move(g)](cplx z) { return square_modulus_green(g, z); };
}

cplx rescale_green(const ComplexFunction& g, double a, cplx z) {
  if (!(a > 0.0)) throw DomainError("rescale_green: a must be positive");
  return a * g(a * z);
}

ComplexFunction rescale_green(ComplexFunction g, double a) {
  if (!(a > 0.0)) throw DomainError("rescale_green: a must be positive");
  return [g = std::move(g), a](cplx z) { return rescale_green(g, a, z); };
}

moments::MomentSequence square_modulus_moments(const moments::MomentSequence& symmetric) {
  moments::MomentSequence out;
  for (std::size_t k = 0; 2 * k < symmetric.size(); ++k) out.values.push_back(symmetric[2 * k]);
  return out;
}

moments::MomentSequence rescale_moments(const moments::MomentSequence& m, const Rational& a) {
  if (a <= 0) throw DomainError("rescale_moments: a must be positive");
  moments::MomentSequence out;
  Rational ak = 1;
  for (std::size_t k = 0; k < m.size(); ++k) {
    out.values.push_back(m[k] / ak);
    ak *= a;
  }
  return out;
}

cplx green_from_r(const ComplexFunction& r, cplx z, const measures::FixedPointOptions& opts) {
  if (z == 0.0) throw DomainError("green_from_r: z must be nonzero");
  auto newton = [&](cplx target, cplx g) {
    for (int it = 0; it < opts.max_iterations; ++it) {
      const double h = 1e-6 * std::max(1e-3, std::abs(g));
      const cplx f = r(g) + 1.0 / g - target;
      const cplx df = (r(g + h) - r(g - h)) / (2.0 * h) - 1.0 / (g * g);
      const cplx step = opts.damping * f / df;
      g -= step;
      if (std::abs(step) <= opts.tolerance * std::abs(g)) return g;
    }
    throw ConvergenceError("green_from_r: Newton iteration did not converge");
  };
  // Continue from far above z, where G ~ 1/z, down to z.
  const double sign = z.imag() < 0.0 ? -1.0 : 1.0;
  double lift = std::max(10.0, 4.0 * std::abs(z));
  cplx g = 1.0 / (z + cplx(0.0, sign * lift));
  while (lift > 1e-12 * std::max(1.0, std::abs(z))) {
    g = newton(z + cplx(0.0, sign * lift), g);
    lift *= 0.5;
  }
  return newton(z, g);
}

}  // namespace freeconv::isotropic
