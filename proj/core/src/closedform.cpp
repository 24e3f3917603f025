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

#include "freeconv/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "freeconv/errors.hpp"
#include "freeconv/measure_parser.hpp"
#include "freeconv/quadrature.hpp"

namespace freeconv::closedform {
namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }
double sqrt0(double v) { return std::sqrt(std::max(0.0, v)); }

double mp_density(double c, double x) {
  const double sc = std::sqrt(c);
  const double lo = 1.0 + c - 2.0 * sc, hi = 1.0 + c + 2.0 * sc;
  return sqrt0((x - lo) * (hi - x)) / (2.0 * kPi * x * c);
}

double fc2_density(double x) {
  const double r = std::cbrt(27.0 + 3.0 * sqrt0(81.0 - 12.0 * x));
  return std::cbrt(2.0) * std::sqrt(3.0) / (12.0 * kPi) *
         (std::cbrt(2.0) * r * r - 6.0 * std::cbrt(x)) / (std::pow(x, 2.0 / 3.0) * r);
}

double mpsqrt_density(double x) {
  const double y = sqrt0(81.0 - 12.0 * x * x);
  const double p = std::cbrt(9.0 + y), m = std::cbrt(9.0 - y);
  return std::cbrt(1.0 / x) * (p - m) / (std::pow(2.0, 4.0 / 3.0) * std::pow(3.0, 1.0 / 6.0) * kPi) +
         std::cbrt(x) * (p * p - m * m) / (std::pow(2.0, 5.0 / 3.0) * std::pow(3.0, 5.0 / 6.0) * kPi);
}

double bures1_density(double x) {
  const double a = 3.0 * std::sqrt(3.0);
  const double r = a / x;
  const double s = sqrt0(r * r - 1.0);
  return (std::pow(r + s, 2.0 / 3.0) - std::cbrt((r - s) * (r - s))) / (4.0 * kPi * std::sqrt(3.0));
}

double fc3_density(double x) {
  const double y = std::cos(std::acos(clamp_unit(3.0 * std::sqrt(3.0) / 16.0 * std::sqrt(x))) / 3.0);
  return std::pow(x, -0.75) / (2.0 * std::pow(3.0, 0.25) * kPi) *
         sqrt0(4.0 * y - std::pow(3.0, 0.75) * std::pow(x, 0.25) / std::sqrt(y));
}

double mpcbrt_raw(double x) {
  const double x3 = x * x * x, x6 = x3 * x3;
  const double y = 4.0 / std::sqrt(3.0) * std::pow(x, 1.5) *
                   std::cos(std::acos(clamp_unit(3.0 * std::sqrt(3.0) / 16.0 * std::pow(x, 1.5))) / 3.0);
  const double inner = y - 2.0 * x3 + 0.25 * x6;
  // 24 - 12 t + t^2 = (t - t0)(t - t1). Only the |t - t0| factor is paired
  // with the double zero of `inner`; an |.| around the whole term
  // would also flip the sign change at t1, just below the upper edge.
  static const double t0 = 6.0 - 2.0 * std::sqrt(3.0), t1 = 6.0 + 2.0 * std::sqrt(3.0);
  const double frac = x3 * std::abs(x3 - t0) * (t1 - x3) / (4.0 * std::sqrt(inner));
  return sqrt0(y + 4.0 * x3 - 0.5 * x6 + frac) / (2.0 * kPi * x);
}

// Both the numerator and the radicand of the |.| term vanish at
// x0^3 = 6 - 2 sqrt(3); interpolate across the removable 0/0.
double mpcbrt_density(double x) {
  static const double x0 = std::cbrt(6.0 - 2.0 * std::sqrt(3.0));
  constexpr double h = 2e-3;
  const double d = x - x0;
  if (std::abs(d) >= h) return mpcbrt_raw(x);
  const double nodes[4] = {-2.0 * h, -h, h, 2.0 * h};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double l = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) l *= (d - nodes[j]) / (nodes[i] - nodes[j]);
    sum += l * mpcbrt_raw(x0 + nodes[i]);
  }
  return sum;
}

double bures2_density(double x) {
  return sqrt0(2.0 - std::sqrt(x / 2.0)) / (kPi * std::pow(2.0, 1.25) * std::pow(x, 0.75));
}

// Below this substituted distance the point rounds onto the edge, where
// eval reports 0; the transformed integrand is finite there, so freeze it.
double edge_floor(double edge, int k) {
  return std::pow(8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(edge)), 1.0 / k);
}

}  // namespace

Family mp(const Rational& c) {
  if (c <= 0) throw DomainError("MP family requires c > 0");
  return Family{Tag::MP, c};
}

Family family(Tag tag) { return Family{tag, Rational(1)}; }

FamilySupport support(const Family& f) {
  FamilySupport s;
  switch (f.tag) {
    case Tag::MP: {
      const double c = f.c.get_d();
      const double sc = std::sqrt(c);
      s.hi = 1.0 + c + 2.0 * sc;
      if (f.c == 1) {
        s.lo = 0.0;
      } else {
        s.lo = (1.0 - sc) * (1.0 - sc);
      }
      if (c > 1.0) s.atom = 1.0 - 1.0 / c;
      break;
    }
    case Tag::AS:
      s.hi = 2.0;
      break;
    case Tag::FC2:
      s.hi = 27.0 / 4.0;
      s.lo_power = 3;
      break;
    case Tag::FC3:
      s.hi = 256.0 / 27.0;
      s.lo_power = 4;
      break;
    case Tag::MPSQRT:
      s.hi = std::sqrt(27.0 / 4.0);
      s.lo_power = 3;
      break;
    case Tag::MPCBRT:
      s.hi = std::cbrt(256.0 / 27.0);
      s.lo_power = 4;
      break;
    case Tag::BURES1:
      s.hi = 3.0 * std::sqrt(3.0);
      s.lo_power = 3;
      break;
    case Tag::BURES2:
      s.hi = 8.0;
      s.lo_power = 4;
      break;
  }
  return s;
}

double eval(const Family& f, double x) {
  const FamilySupport s = support(f);
  if (!(x > s.lo && x < s.hi)) {
    // Closed support: soft edges are zeros, singular endpoints report 0.
    return 0.0;
  }
  switch (f.tag) {
    case Tag::MP: return mp_density(f.c.get_d(), x);
    case Tag::AS: return 1.0 / (kPi * std::sqrt(x * (2.0 - x)));
    case Tag::FC2: return std::max(0.0, fc2_density(x));
    case Tag::FC3: return fc3_density(x);
    case Tag::MPSQRT: return std::max(0.0, mpsqrt_density(x));
    case Tag::MPCBRT: return std::max(0.0, mpcbrt_density(x));
    case Tag::BURES1: return std::max(0.0, bures1_density(x));
    case Tag::BURES2: return bures2_density(x);
  }
  return 0.0;
}

double cdf(const Family& f, double x) {
  const FamilySupport s = support(f);
  if (x < 0.0) return 0.0;
  if (x <= s.lo) return s.atom;
  if (x >= s.hi) return 1.0;
  const double mid = 0.5 * (s.lo + s.hi);
  auto left = [&](double upper) {
    // x = lo + u^k
    const int k = s.lo_power;
    const double umax = std::pow(upper - s.lo, 1.0 / k);
    const double floor = edge_floor(s.lo, k);
    return quadrature::integrate_adaptive(
        [&](double u) {
          u = std::max(u, floor);
          return eval(f, s.lo + std::pow(u, k)) * k * std::pow(u, k - 1);
        },
        0.0, umax);
  };
  auto right = [&](double lower) {
    // x = hi - u^k
    const int k = s.hi_power;
    const double umax = std::pow(s.hi - lower, 1.0 / k);
    const double floor = edge_floor(s.hi, k);
    return quadrature::integrate_adaptive(
        [&](double u) {
          u = std::max(u, floor);
          return eval(f, s.hi - std::pow(u, k)) * k * std::pow(u, k - 1);
        },
        0.0, umax);
  };
  double v;
  if (x <= mid) {
    v = s.atom + left(x);
  } else {
    v = 1.0 - right(x);
  }
  return std::clamp(v, s.atom, 1.0);
}

measures::MeasureSpec equivalent_spec(const Family& f) {
  using measures::MeasureSpec;
  switch (f.tag) {
    case Tag::MP: return MeasureSpec::of(measures::mp(f.c));
    case Tag::AS: return MeasureSpec::of(measures::arcsine());
    case Tag::FC2: return *measures::alias_spec("fc2");
    case Tag::FC3: return *measures::alias_spec("fc3");
    case Tag::MPSQRT: return *measures::alias_spec("mp-sqrt");
    case Tag::MPCBRT: return *measures::alias_spec("mp-cbrt");
    case Tag::BURES1: return *measures::alias_spec("bures");
    case Tag::BURES2: return *measures::alias_spec("bures2");
  }
  return {};
}

std::string name(const Family& f) {
  switch (f.tag) {
    case Tag::MP: return "mp(" + f.c.get_str() + ")";
    case Tag::AS: return "as";
    case Tag::FC2: return "fc2";
    case Tag::FC3: return "fc3";
    case Tag::MPSQRT: return "mp-sqrt";
    case Tag::MPCBRT: return "mp-cbrt";
    case Tag::BURES1: return "bures";
    case Tag::BURES2: return "bures2";
  }
  return {};
}

std::optional<Family> parse_family(std::string_view text) {
  measures::MeasureSpec spec;
  try {
    spec = measures::parse_measure(text);
  } catch (const ParseError&) {
    return std::nullopt;
  }
  if (spec.factors().size() == 1 && spec.factors()[0].exponent == 1) {
    if (const auto* m = std::get_if<measures::MpFactor>(&spec.factors()[0].kind)) return mp(m->c);
  }
  if (spec.is_identity()) return std::nullopt;
  const auto target = measures::build_resolvent(spec);
  for (Tag t : {Tag::AS, Tag::FC2, Tag::FC3, Tag::MPSQRT, Tag::MPCBRT, Tag::BURES1, Tag::BURES2}) {
    if (measures::build_resolvent(equivalent_spec(family(t))) == target) return family(t);
  }
  return std::nullopt;
}

std::vector<Family> reference_families() {
  return {mp(1), mp(Rational(1, 4)), family(Tag::AS), family(Tag::FC2), family(Tag::FC3),
          family(Tag::MPSQRT), family(Tag::MPCBRT), family(Tag::BURES1), family(Tag::BURES2)};
}

}  // namespace freeconv::closedform
