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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "freeconv/errors.hpp"
#include "freeconv/measures.hpp"

namespace freeconv::measures {
namespace {

using cplx = std::complex<double>;

// P(w, z) = sum c_ij w^i z^j given as {i, j, c} triples.
struct Term {
  int i, j;
  Rational c;
};

void expect_coefficients(const ResolventPolynomial& p, const std::vector<Term>& terms) {
  const auto got = p.coefficients();
  std::vector<std::vector<Rational>> want(got.size());
  for (std::size_t i = 0; i < got.size(); ++i) want[i].assign(got[i].size(), Rational(0));
  for (const auto& t : terms) {
    ASSERT_LT(static_cast<std::size_t>(t.i), want.size());
    ASSERT_LT(static_cast<std::size_t>(t.j), want[t.i].size());
    want[t.i][t.j] = t.c;
  }
  EXPECT_EQ(got, want) << p.to_string();
}

MeasureSpec mp1() { return MeasureSpec::of(mp(1)); }
MeasureSpec as() { return MeasureSpec::of(arcsine()); }

TEST(SEval, MpAtZero) { EXPECT_EQ(s_eval(mp1(), 0.0), cplx(1.0)); }

TEST(SEval, BuresAtZero) { EXPECT_NEAR(std::abs(s_eval(boxtimes(as(), mp1()), 0.0) - 1.0), 0.0, 1e-15); }

TEST(SEval, SquaredMpAtOne) { EXPECT_NEAR(std::abs(s_eval(free_power(mp1(), 2), 1.0) - 0.25), 0.0, 1e-15); }

TEST(SEval, PoleThrows) {
  EXPECT_THROW(s_eval(mp1(), -1.0), PoleError);
  EXPECT_THROW(s_eval(MeasureSpec::of(mp(Rational(1, 2))), -2.0), PoleError);
}

TEST(Factors, Validation) {
  EXPECT_THROW(mp(0), DomainError);
  EXPECT_THROW(mp(-1), DomainError);
  EXPECT_THROW(rational_factor(Polynomial({0, 1}), Polynomial({1})), DomainError);
  EXPECT_THROW(rational_factor(Polynomial({Rational(1, 2)}), Polynomial({1})), DomainError);
  EXPECT_NO_THROW(rational_factor(Polynomial({2, 2}), Polynomial({1, 2})));
}

TEST(Boxtimes, ConcatenatesFactors) {
  const MeasureSpec b = boxtimes(as(), mp1());
  ASSERT_EQ(b.factors().size(), 2u);
  EXPECT_TRUE(std::holds_alternative<AsFactor>(b.factors()[0].kind));
  EXPECT_TRUE(std::holds_alternative<MpFactor>(b.factors()[1].kind));
  // S(w) = (w + 2) / (2 (w + 1)^2)
  const cplx w(0.3, -0.2);
  EXPECT_NEAR(std::abs(s_eval(b, w) - (w + 2.0) / (2.0 * (w + 1.0) * (w + 1.0))), 0.0, 1e-15);
}

TEST(Boxtimes, IdentityIsNeutral) {
  const MeasureSpec x = boxtimes(as(), mp1());
  EXPECT_EQ(boxtimes(x, MeasureSpec()), x);
  EXPECT_EQ(boxtimes(MeasureSpec(), x), x);
}

TEST(Boxtimes, ThreeMp) {
  const MeasureSpec x = boxtimes(boxtimes(mp1(), mp1()), mp1());
  const cplx w(0.4, 0.1);
  EXPECT_NEAR(std::abs(s_eval(x, w) - std::pow(1.0 + w, -3.0)), 0.0, 1e-14);
}

TEST(FreePower, ScalesExponents) {
  const MeasureSpec cube = free_power(mp1(), 3);
  ASSERT_EQ(cube.factors().size(), 1u);
  EXPECT_EQ(cube.factors()[0].exponent, 3);
  EXPECT_EQ(free_power(boxtimes(as(), mp1()), 1), boxtimes(as(), mp1()));
  const MeasureSpec third = free_power(mp1(), Rational(1, 3));
  EXPECT_EQ(third.factors()[0].exponent, Rational(1, 3));
  const cplx w(0.5, 0.0);
  EXPECT_NEAR(std::abs(s_eval(third, w) - std::pow(1.5, -1.0 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s_eval(free_power(mp1(), Rational(1, 2)), w) - 1.0 / std::sqrt(1.5)), 0.0, 1e-15);
}

TEST(FreePower, RejectsNonPositive) {
  EXPECT_THROW(free_power(mp1(), 0), DomainError);
  EXPECT_THROW(free_power(mp1(), -1), DomainError);
}

TEST(BuildResolvent, FussCatalanThree) {
  // w^4 + 4 w^3 + 6 w^2 + (4 - z) w + 1
  const auto p = build_resolvent(free_power(mp1(), 3));
  expect_coefficients(p, {{4, 0, 1}, {3, 0, 4}, {2, 0, 6}, {1, 0, 4}, {1, 1, -1}, {0, 0, 1}});
  EXPECT_EQ(p.clearing_power(), 1);
}

TEST(BuildResolvent, FreeSquareRoot) {
  // w^3 + (3 - z^2) w^2 + 3 w + 1
  const auto p = build_resolvent(free_power(mp1(), Rational(1, 2)));
  expect_coefficients(p, {{3, 0, 1}, {2, 0, 3}, {2, 2, -1}, {1, 0, 3}, {0, 0, 1}});
  EXPECT_EQ(p.clearing_power(), 2);
}

TEST(BuildResolvent, FreeCubeRoot) {
  // w^4 + (4 - z^3) w^3 + 6 w^2 + 4 w + 1
  const auto p = build_resolvent(free_power(mp1(), Rational(1, 3)));
  expect_coefficients(p, {{4, 0, 1}, {3, 0, 4}, {3, 3, -1}, {2, 0, 6}, {1, 0, 4}, {0, 0, 1}});
  EXPECT_EQ(p.clearing_power(), 3);
}

TEST(BuildResolvent, GeneralisedBures) {
  // 2 (1 + c w)(1 + w)^2 - z w (w + 2) with c = 3/5
  const Rational c(3, 5);
  const auto p = build_resolvent(boxtimes(as(), MeasureSpec::of(mp(c))));
  // (1 + w)^2 (1 + c w) = 1 + (2 + c) w + (1 + 2c) w^2 + c w^3
  expect_coefficients(p, {{0, 0, 2}, {1, 0, 2 * (2 + c)}, {2, 0, 2 * (1 + 2 * c)}, {3, 0, 2 * c}, {2, 1, -1},
                          {1, 1, -2}});
}

TEST(BuildResolvent, MarchenkoPasturQuadratic) {
  // (1 + w)(1 + c w) - z w
  const Rational c(1, 4);
  const auto p = build_resolvent(MeasureSpec::of(mp(c)));
  expect_coefficients(p, {{0, 0, 1}, {1, 0, 1 + c}, {2, 0, c}, {1, 1, -1}});
}

TEST(BuildResolvent, IdentityMeasure) {
  // (1 + w) - z w: G = 1 / (z - 1)
  const auto p = build_resolvent(MeasureSpec());
  expect_coefficients(p, {{0, 0, 1}, {1, 0, 1}, {1, 1, -1}});
  EXPECT_DOUBLE_EQ(p.first_moment(), 1.0);
}

TEST(BuildResolvent, FirstMomentFromSAtZero) {
  const auto p = build_resolvent(MeasureSpec::of(rational_factor(Polynomial({1, 2}), Polynomial({2, 2}))));
  // S(0) = 1/2, so m1 = 2.
  EXPECT_DOUBLE_EQ(p.first_moment(), 2.0);
  ASSERT_TRUE(p.exact_first_moment().has_value());
  EXPECT_EQ(*p.exact_first_moment(), 2);
}

TEST(BuildResolvent, RealCoefficientsOnRealAxis) {
  const auto p = build_resolvent(boxtimes(as(), free_power(mp1(), Rational(1, 2))));
  for (const auto& c : p.coefficients_at(cplx(1.7, 0.0))) EXPECT_EQ(c.imag(), 0.0);
}

TEST(BuildResolvent, ToStringShowsBothParts) {
  const auto p = build_resolvent(free_power(mp1(), 2));
  EXPECT_NE(p.to_string().find("z"), std::string::npos);
}

// ---- property tests ---------------------------------------------------------

std::vector<MeasureSpec> sample_specs() {
  return {mp1(),
          MeasureSpec::of(mp(Rational(1, 4))),
          as(),
          boxtimes(as(), free_power(mp1(), 2)),
          free_power(mp1(), Rational(1, 3)),
          boxtimes(MeasureSpec::of(mp(2)), free_power(as(), Rational(1, 2))),
          MeasureSpec::of(rational_factor(Polynomial({2, 2}), Polynomial({1, 2})))};
}

TEST(Property, SOfProductIsProductOfS) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const auto specs = sample_specs();
  for (std::size_t a = 0; a < specs.size(); ++a) {
    for (std::size_t b = 0; b < specs.size(); ++b) {
      const MeasureSpec ab = boxtimes(specs[a], specs[b]);
      for (int k = 0; k < 100; ++k) {
        const cplx w(u(rng), u(rng));
        const cplx lhs = s_eval(ab, w);
        const cplx rhs = s_eval(specs[a], w) * s_eval(specs[b], w);
        ASSERT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST(Property, ResolventVanishesOnTheRelation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (const auto& spec : sample_specs()) {
    const auto p = build_resolvent(spec);
    for (int k = 0; k < 100; ++k) {
      const cplx w(u(rng), u(rng));
      if (std::abs(w) < 1e-3) continue;
      const cplx z = (1.0 + w) / (w * s_eval(spec, w));
      // Scale: sum of the absolute values of the individual terms.
      double scale = 0.0;
      const auto c = p.coefficients();
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c[i].size(); ++j)
          scale += std::abs(c[i][j].get_d()) * std::pow(std::abs(w), i) * std::pow(std::abs(z), j);
      ASSERT_LT(std::abs(p(w, z)) / scale, 1e-10) << spec.to_string();
    }
  }
}

// ---- R and S from G ---------------------------------------------------------

cplx g_mp1(cplx z) { return (1.0 - std::sqrt(1.0 - 4.0 / z)) / 2.0; }
cplx g_as(cplx z) { return 1.0 / (std::sqrt(z) * std::sqrt(z - 2.0)); }

TEST(RFromG, PointMassAtZero) {
  EXPECT_NEAR(std::abs(r_from_g([](cplx z) { return 1.0 / z; }, 0.1)), 0.0, 1e-12);
}

TEST(RFromG, PointMassAtOne) {
  EXPECT_NEAR(std::abs(r_from_g([](cplx z) { return 1.0 / (z - 1.0); }, 0.2) - 1.0), 0.0, 1e-12);
}

TEST(RFromG, MarchenkoPastur) {
  // Free cumulants of MP(1) are all 1: R(y) = 1 / (1 - y).
  EXPECT_NEAR(std::abs(r_from_g(g_mp1, 0.1) - 1.0 / 0.9), 0.0, 1e-10);
}

TEST(SFromR, IdentityMeasure) {
  EXPECT_NEAR(std::abs(s_from_r([](cplx) { return cplx(1.0); }, 0.3) - 1.0), 0.0, 1e-12);
}

TEST(SFromR, MarchenkoPastur) {
  EXPECT_NEAR(std::abs(s_from_r([](cplx y) { return 1.0 / (1.0 - y); }, 0.2) - 1.0 / 1.2), 0.0, 1e-10);
}

TEST(SFromR, Arcsine) {
  auto r = [](cplx z) { return (z - 1.0 + std::sqrt(z * z + 1.0)) / z; };
  EXPECT_NEAR(std::abs(s_from_r(r, 0.5) - 2.5 / 3.0), 0.0, 1e-10);
}

TEST(SFromR, VanishingFirstCumulant) {
  EXPECT_THROW(s_from_r([](cplx z) { return z; }, 0.1), DomainError);
}

TEST(Property, SFromRFromGRoundTrip) {
  const std::vector<std::pair<MeasureSpec, ComplexFunction>> cases{{mp1(), g_mp1}, {as(), g_as}};
  for (const auto& [spec, g] : cases) {
    auto r = [g = g](cplx y) { return r_from_g(g, y); };
    for (double y : {0.05, 0.1, 0.2}) {
      EXPECT_NEAR(std::abs(s_from_r(r, y) - s_eval(spec, y)), 0.0, 1e-8) << spec.to_string() << " y=" << y;
    }
  }
}

}  // namespace
}  // namespace freeconv::measures
