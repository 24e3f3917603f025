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

#include "freeconv/errors.hpp"
#include "freeconv/polynomial.hpp"

namespace freeconv {
namespace {

Polynomial P(std::initializer_list<Rational> c) { return Polynomial(c); }

TEST(Polynomial, TrimsTrailingZeros) {
  EXPECT_EQ(P({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(P({0, 0}).is_zero());
  EXPECT_EQ(P({0}).degree(), -1);
}

TEST(Polynomial, Arithmetic) {
  const Polynomial a = P({1, 1});  // 1 + w
  EXPECT_EQ(a * a, P({1, 2, 1}));
  EXPECT_EQ(a.pow(3), P({1, 3, 3, 1}));
  EXPECT_EQ(a - a, Polynomial());
  EXPECT_EQ(a * Rational(1, 2), P({Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(P({1, 3, 3, 1}).derivative(), P({3, 6, 3}));
}

TEST(Polynomial, EvaluationExactAndComplex) {
  const Polynomial p = P({1, -3, 0, 2});
  EXPECT_EQ(p(Rational(1, 2)), Rational(1) - Rational(3, 2) + Rational(1, 4));
  const auto v = p(std::complex<double>(0.0, 1.0));
  EXPECT_NEAR(v.real(), 1.0, 1e-15);
  EXPECT_NEAR(v.imag(), -5.0, 1e-15);
}

TEST(Polynomial, OrderAndMultiplicity) {
  const Polynomial p = P({0, 0, 1, 1});  // w^2 (1 + w)
  EXPECT_EQ(p.order(), 2);
  EXPECT_EQ(p.multiplicity_at(0), 2);
  EXPECT_EQ(p.multiplicity_at(-1), 1);
  EXPECT_EQ(P({1, 1}).pow(4).multiplicity_at(-1), 4);
}

TEST(Polynomial, TaylorShift) {
  // (1 + w)^3 shifted by -1 is v^3.
  EXPECT_EQ(P({1, 3, 3, 1}).taylor_shift(-1), P({0, 0, 0, 1}));
}

TEST(Polynomial, DivmodAndGcd) {
  const Polynomial a = P({1, 1}).pow(2) * P({2, 1});
  const Polynomial b = P({1, 1}) * P({3, 1});
  const auto [q, r] = divmod(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(gcd(a, b), P({1, 1}));
  EXPECT_THROW(divmod(a, Polynomial()), DomainError);
}

TEST(Polynomial, SquarefreeFactors) {
  // (w - 1) (w + 2)^3: factor k holds the roots of multiplicity k.
  const Polynomial p = P({-1, 1}) * P({2, 1}).pow(3);
  const auto f = squarefree_factors(p);
  ASSERT_GE(f.size(), 3u);
  EXPECT_EQ(f[0].monic(), P({-1, 1}));
  EXPECT_EQ(f[1].degree(), 0);
  EXPECT_EQ(f[2].monic(), P({2, 1}));
}

TEST(Polynomial, ToString) {
  EXPECT_EQ(to_string(P({1, -1, 2}), "w"), "2w^2 - w + 1");
}

}  // namespace
}  // namespace freeconv
