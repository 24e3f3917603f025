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

#include <algorithm>
#include <cmath>
#include <random>

#include "freeconv/errors.hpp"
#include "freeconv/measures.hpp"
#include "freeconv/resolvent.hpp"
#include "freeconv/roots.hpp"

namespace freeconv {
namespace {

using measures::MeasureSpec;

std::vector<cplx> expand(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] -= r * c[i];
      next[i + 1] += c[i];
    }
    c = next;
  }
  return c;
}

double distance_to_set(cplx x, const std::vector<cplx>& set) {
  double d = INFINITY;
  for (const cplx& s : set) d = std::min(d, std::abs(x - s));
  return d;
}

TEST(PolynomialRoots, RecoversKnownRoots) {
  const std::vector<cplx> want{{1.0, 0.0}, {-2.0, 0.0}, {0.5, 1.5}, {0.5, -1.5}, {3.0, 0.25}};
  const RootSet rs = polynomial_roots(expand(want));
  ASSERT_EQ(rs.roots.size(), want.size());
  for (const cplx& w : want) EXPECT_LT(distance_to_set(w, rs.roots), 1e-12);
  EXPECT_FALSE(rs.degree_dropped);
}

TEST(PolynomialRoots, WideDynamicRange) {
  const std::vector<cplx> want{1e-6, 1.0, 1e6};
  const RootSet rs = polynomial_roots(expand(want));
  for (const cplx& w : want) EXPECT_LT(distance_to_set(w, rs.roots) / std::abs(w), 1e-10);
}

TEST(PolynomialRoots, LinearAndConstant) {
  EXPECT_EQ(polynomial_roots({2.0, -1.0}).roots, std::vector<cplx>{2.0});
  EXPECT_TRUE(polynomial_roots({3.0}).roots.empty());
  EXPECT_THROW(polynomial_roots({0.0, 0.0}), DomainError);
}

TEST(PolynomialRoots, DegreeDropFlag) {
  const RootSet rs = polynomial_roots({-1.0, 1.0, 1e-20});
  EXPECT_TRUE(rs.degree_dropped);
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_NEAR(std::abs(rs.roots[0] - 1.0), 0.0, 1e-15);
}

TEST(PolynomialRoots, ResidualIsSmall) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> c(8);
    for (auto& v : c) v = {g(rng), g(rng)};
    const RootSet rs = polynomial_roots(c);
    double scale = 0.0;
    for (auto& v : c) scale = std::max(scale, std::abs(v));
    for (const cplx& r : rs.roots) {
      double mag = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) mag += std::abs(c[i]) * std::pow(std::abs(r), i);
      EXPECT_LT(std::abs(horner(c, r)) / mag, 1e-13);
    }
  }
}

TEST(ClusterRoots, MergesNearbyRoots) {
  const auto cl = cluster_roots({1.0, 1.0 + 1e-9, 2.0}, 1e-6);
  ASSERT_EQ(cl.size(), 2u);
  const int total = cl[0].multiplicity + cl[1].multiplicity;
  EXPECT_EQ(total, 3);
}

TEST(RootsAt, FussCatalanThreeAtLargeZ) {
  // w^4 + 4 w^3 + 6 w^2 + (4 - z) w + 1 = (1 + w)^4 - z w. For large z one
  // root behaves like 1/z and the other three like z^(1/3) times the cube
  // roots of unity.
  const auto p = measures::build_resolvent(measures::free_power(MeasureSpec::of(measures::mp(1)), 3));
  const double z = 1e9;
  const auto r = resolvent::roots_at(p, z);
  ASSERT_EQ(r.size(), 4u);
  std::vector<cplx> sorted = r;
  std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  EXPECT_NEAR(sorted[0].real() * z, 1.0, 1e-6);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(sorted[i]) / std::cbrt(z), 1.0, 1e-2);
}

TEST(RootsAt, MarchenkoPasturEdgeDoubleRoot) {
  const auto p = measures::build_resolvent(MeasureSpec::of(measures::mp(1)));
  const auto r = resolvent::roots_at(p, 4.0);
  ASSERT_EQ(r.size(), 2u);
  for (const cplx& w : r) EXPECT_NEAR(std::abs(w - 1.0), 0.0, 1e-6);
}

TEST(RootsAt, LinearCase) {
  const auto p = measures::build_resolvent(MeasureSpec());
  const auto r = resolvent::roots_at(p, 2.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(r[0] - 1.0), 0.0, 1e-15);
}

TEST(RootsAt, ArcsineDegreeDropAtTwo) {
  // (2 - z) w^2 + (4 - 2 z) w + 2: the w^2 coefficient vanishes at z = 2.
  const auto p = measures::build_resolvent(MeasureSpec::of(measures::arcsine()));
  bool dropped = false;
  const auto r = resolvent::roots_at(p, 2.0, &dropped);
  EXPECT_TRUE(dropped);
  EXPECT_LT(r.size(), 2u);
  bool dropped_elsewhere = true;
  EXPECT_EQ(resolvent::roots_at(p, 1.5, &dropped_elsewhere).size(), 2u);
  EXPECT_FALSE(dropped_elsewhere);
}

TEST(RootsAt, ResidualBound) {
  const auto p = measures::build_resolvent(
      measures::boxtimes(MeasureSpec::of(measures::arcsine()), MeasureSpec::of(measures::mp(1), 2)));
  for (const cplx z : {cplx(0.5, 0.0), cplx(3.0, 1e-3), cplx(-2.0, 5.0), cplx(40.0, 0.0)}) {
    const auto c = p.coefficients_at(z);
    double cmax = 0.0;
    for (const auto& v : c) cmax = std::max(cmax, std::abs(v));
    for (const cplx& w : resolvent::roots_at(p, z)) {
      double mag = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) mag += std::abs(c[i]) * std::pow(std::abs(w), i);
      EXPECT_LT(std::abs(horner(c, w)), 1e-12 * std::max(cmax, mag)) << "z=" << z;
    }
  }
}

}  // namespace
}  // namespace freeconv
