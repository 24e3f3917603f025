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

#include "freeconv/moments.hpp"

#include <algorithm>
#include <cmath>

#include "freeconv/errors.hpp"

namespace freeconv::moments {
namespace {

void check_order(int K) {
  if (K < 0) throw DomainError("moment order must be nonnegative");
}

// Truncated product of two series up to order K.
std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b, int K) {
  std::vector<Rational> out(static_cast<std::size_t>(K) + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= K; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// 1 / b for b[0] != 0.
std::vector<Rational> inverse(const std::vector<Rational>& b, int K) {
  std::vector<Rational> out(static_cast<std::size_t>(K) + 1, Rational(0));
  out[0] = 1 / b[0];
  for (int n = 1; n <= K; ++n) {
    Rational s = 0;
    for (int j = 1; j <= n && j < static_cast<int>(b.size()); ++j) s += b[j] * out[n - j];
    out[n] = -s / b[0];
  }
  return out;
}

// (1 + g)^p for g(0) = 0, rational p, via (1+g) h' = p g' h.
std::vector<Rational> binomial_series(const std::vector<Rational>& g, const Rational& p, int K) {
  std::vector<Rational> gp(static_cast<std::size_t>(K) + 1, Rational(0));
  for (int i = 1; i <= K && i < static_cast<int>(g.size()); ++i) gp[i - 1] = g[i] * i;
  std::vector<Rational> h(static_cast<std::size_t>(K) + 1, Rational(0));
  h[0] = 1;
  auto gi = [&](int i) { return i < static_cast<int>(g.size()) ? g[i] : Rational(0); };
  for (int n = 0; n < K; ++n) {
    // (n+1) h_{n+1} + sum_{i>=1} g_i (n+1-i) h_{n+1-i} = p sum_{j} gp_j h_{n-j}
    Rational rhs = 0;
    for (int j = 0; j <= n; ++j) rhs += gp[j] * h[n - j];
    rhs *= p;
    Rational lhs = 0;
    for (int i = 1; i <= n; ++i) lhs += gi(i) * (n + 1 - i) * h[n + 1 - i];
    h[n + 1] = (rhs - lhs) / (n + 1);
  }
  return h;
}

// Exact q-th root of a positive rational, if rational.
std::optional<Rational> rational_root(const Rational& r, int q) {
  if (r < 0) return std::nullopt;
  mpz_class n, d;
  if (mpz_root(n.get_mpz_t(), r.get_num().get_mpz_t(), static_cast<unsigned long>(q)) == 0) return std::nullopt;
  if (mpz_root(d.get_mpz_t(), r.get_den().get_mpz_t(), static_cast<unsigned long>(q)) == 0) return std::nullopt;
  return Rational(n, d);
}

Rational rpow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Incremental table of series powers: pw[p][n] = [u^n] t(u)^p.
class PowerTable {
 public:
  PowerTable(int max_power, int K)
      : pw_(static_cast<std::size_t>(max_power) + 1, std::vector<Rational>(static_cast<std::size_t>(K) + 1)) {
    pw_[0][0] = 1;
  }
  // Fills order n of every power from coefficients t[0..n].
  void fill(const std::vector<Rational>& t, int n) {
    for (std::size_t p = 1; p < pw_.size(); ++p) {
      Rational s = 0;
      for (int j = 0; j <= n; ++j) s += t[j] * pw_[p - 1][n - j];
      pw_[p][n] = s;
    }
  }
  const Rational& at(int p, int n) const { return pw_[p][n]; }

 private:
  std::vector<std::vector<Rational>> pw_;
};

}  // namespace

Rational binomial(const Rational& a, int n) {
  if (n < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= (a - i) / Rational(i + 1);
  return r;
}

Rational fuss_catalan(const Rational& s, int n) {
  if (n < 0) throw DomainError("fuss_catalan: n must be nonnegative");
  const Rational den = s * n + 1;
  if (den == 0) throw DomainError("fuss_catalan: s n + 1 = 0");
  return binomial((s + 1) * n, n) / den;
}

MomentSequence moments_from_resolvent(const measures::ResolventPolynomial& poly, int K) {
  check_order(K);
  const int q = poly.clearing_power();
  const Polynomial& b = poly.z_free_part();
  const Polynomial& a = poly.z_part();
  if (a.order() < q) throw DomainError("moments_from_resolvent: A(w) must vanish to order q at 0");
  // A(w) = w^q Ã(w)
  std::vector<Rational> at;
  for (int i = q; i <= a.degree(); ++i) at.push_back(a.coefficient(i));
  const auto t0 = poly.exact_first_moment();
  if (!t0) throw DomainError("moments_from_resolvent: the first moment is irrational");

  MomentSequence m;
  m.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
  m.values[0] = 1;
  if (K == 0) return m;

  const int dat = static_cast<int>(at.size()) - 1;
  const int max_power = std::max(q + dat, b.degree());
  const Rational ft = Rational(q) * rpow(*t0, q - 1) * at[0];
  if (ft == 0) throw SeriesAmbiguity("moments_from_resolvent: degenerate linear coefficient");

  std::vector<Rational> t(static_cast<std::size_t>(K), Rational(0));
  PowerTable pw(max_power, K);
  t[0] = *t0;
  pw.fill(t, 0);
  for (int n = 1; n < K; ++n) {
    pw.fill(t, n);  // t[n] is still 0 here
    Rational f = 0;
    for (int i = 0; i <= dat && i <= n; ++i) f += at[i] * pw.at(q + i, n - i);
    for (int i = 0; i <= b.degree() && i <= n; ++i) f -= b.coefficient(i) * pw.at(i, n - i);
    t[n] = -f / ft;
    pw.fill(t, n);
  }
  for (int n = 0; n < K; ++n) m.values[n + 1] = t[n];
  return m;
}

std::vector<Rational> s_series(const measures::MeasureSpec& spec, int K) {
  check_order(K);
  std::vector<Rational> s(static_cast<std::size_t>(K) + 1, Rational(0));
  s[0] = 1;
  for (const auto& f : spec.factors()) {
    const auto [num, den] = measures::factor_fraction(f.kind);
    std::vector<Rational> nc(num.coefficients()), dc(den.coefficients());
    std::vector<Rational> ratio = mul(nc, inverse(dc, K), K);
    const Rational r0 = ratio[0];
    const int qd = static_cast<int>(f.exponent.get_den().get_si());
    const auto root = rational_root(r0 > 0 ? r0 : Rational(-r0), qd);
    if (r0 <= 0 || !root) throw DomainError("s_series: factor(0)^exponent is not rational");
    Rational lead = 1;
    const long en = f.exponent.get_num().get_si();
    for (long i = 0; i < std::labs(en); ++i) lead *= *root;
    if (en < 0) lead = 1 / lead;
    std::vector<Rational> g(ratio.size());
    for (std::size_t i = 1; i < ratio.size(); ++i) g[i] = ratio[i] / r0;
    std::vector<Rational> pw = binomial_series(g, f.exponent, K);
    for (auto& c : pw) c *= lead;
    s = mul(s, pw, K);
  }
  return s;
}

std::vector<Rational> series_reversion(const std::vector<Rational>& c, int K) {
  if (c.size() < 2 || c[0] != 0 || c[1] == 0)
    throw DomainError("series_reversion: need c_0 = 0 and c_1 != 0");
  const int D = std::min(K, static_cast<int>(c.size()) - 1);
  std::vector<Rational> p(static_cast<std::size_t>(K) + 1, Rational(0));
  if (K < 1) return p;
  p[1] = 1 / c[1];
  PowerTable pw(D, K);
  pw.fill(p, 0);
  pw.fill(p, 1);
  for (int n = 2; n <= K; ++n) {
    pw.fill(p, n);  // p[n] = 0 here
    Rational s = 0;
    for (int k = 2; k <= D; ++k) s += c[k] * pw.at(k, n);
    p[n] = -s / c[1];
    pw.fill(p, n);
  }
  return p;
}

MomentSequence moments_from_s_transform(const measures::MeasureSpec& spec, int K) {
  check_order(K);
  MomentSequence m;
  m.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
  m.values[0] = 1;
  if (K == 0) return m;
  // chi(w) = w S(w) / (1 + w)
  const std::vector<Rational> s = s_series(spec, K);
  std::vector<Rational> geo(static_cast<std::size_t>(K) + 1);
  for (int i = 0; i <= K; ++i) geo[i] = (i % 2 == 0) ? 1 : -1;
  const std::vector<Rational> sg = mul(s, geo, K - 1);
  std::vector<Rational> chi(static_cast<std::size_t>(K) + 1, Rational(0));
  for (int i = 0; i < K; ++i) chi[i + 1] = sg[i];
  const std::vector<Rational> psi = series_reversion(chi, K);
  for (int n = 1; n <= K; ++n) m.values[n] = psi[n];
  return m;
}

CumulantSequence cumulants_from_moments(const MomentSequence& m) {
  if (m.values.empty() || m.values[0] != 1) throw DomainError("cumulants_from_moments: m_0 must be 1");
  const int K = static_cast<int>(m.values.size()) - 1;
  CumulantSequence k;
  k.values.assign(static_cast<std::size_t>(K), Rational(0));
  PowerTable pw(std::max(K, 1), K);
  for (int n = 0; n <= K; ++n) pw.fill(m.values, n);
  for (int n = 1; n <= K; ++n) {
    Rational s = 0;
    for (int j = 1; j < n; ++j) s += k.values[j - 1] * pw.at(j, n - j);
    k.values[n - 1] = m.values[n] - s;
  }
  return k;
}

MomentSequence moments_from_cumulants(const CumulantSequence& k) {
  const int K = static_cast<int>(k.values.size());
  MomentSequence m;
  m.values.assign(static_cast<std::size_t>(K) + 1, Rational(0));
  m.values[0] = 1;
  PowerTable pw(std::max(K, 1), K);
  pw.fill(m.values, 0);
  for (int n = 1; n <= K; ++n) {
    Rational s = k.values[n - 1];
    for (int j = 1; j < n; ++j) s += k.values[j - 1] * pw.at(j, n - j);
    m.values[n] = s;
    pw.fill(m.values, n);
  }
  return m;
}

std::vector<Rational> hankel_determinants(const MomentSequence& m, int max_size) {
  std::vector<Rational> out;
  for (int n = 1; n <= max_size; ++n) {
    if (2 * (n - 1) >= static_cast<int>(m.values.size())) break;
    std::vector<std::vector<Rational>> h(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h[i][j] = m.values[i + j];
    Rational det = 1;
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (h[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        det = 0;
        break;
      }
      if (piv != c) {
        std::swap(h[piv], h[c]);
        det = -det;
      }
      det *= h[c][c];
      for (int r = c + 1; r < n; ++r) {
        const Rational f = h[r][c] / h[c][c];
        for (int j = c; j < n; ++j) h[r][j] -= f * h[c][j];
      }
    }
    out.push_back(det);
  }
  return out;
}

std::vector<double> moments_from_density(const resolvent::DensityCurve& curve, int K) {
  check_order(K);
  std::vector<double> m(static_cast<std::size_t>(K) + 1, 0.0);
  for (const auto& p : curve.points) {
    double xk = 1.0;
    for (int k = 0; k <= K; ++k) {
      m[k] += p.weight * p.rho * xk;
      xk *= p.x;
    }
  }
  m[0] += curve.atom_at_zero;
  return m;
}

std::vector<double> sample_moments(const std::vector<double>& values, int K) {
  check_order(K);
  std::vector<double> m(static_cast<std::size_t>(K) + 1, 0.0);
  if (values.empty()) return m;
  for (double v : values) {
    double xk = 1.0;
    for (int k = 0; k <= K; ++k) {
      m[k] += xk;
      xk *= v;
    }
  }
  for (auto& x : m) x /= static_cast<double>(values.size());
  return m;
}

}  // namespace freeconv::moments
