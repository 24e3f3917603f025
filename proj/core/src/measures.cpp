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

#include "freeconv/measures.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "freeconv/errors.hpp"

namespace freeconv::measures {
namespace {

std::string rational_text(const Rational& r) { return r.get_str(); }

std::string exponent_text(const Rational& e) {
  if (e == 1) return "";
  if (e.get_den() == 1 && e > 0) return "^" + e.get_str();
  return "^(" + e.get_str() + ")";
}

std::string coeff_list(const Polynomial& p) {
  std::ostringstream os;
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) os << ',';
    os << p.coefficient(i).get_str();
  }
  return os.str();
}

int checked_int(const mpz_class& v, const char* what) {
  if (!v.fits_sint_p()) throw DomainError(std::string(what) + " does not fit in int");
  return static_cast<int>(v.get_si());
}

// Exact q-th root of a nonnegative integer, if it exists.
std::optional<mpz_class> exact_root(const mpz_class& v, unsigned q) {
  if (v < 0) return std::nullopt;
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), q) == 0) return std::nullopt;
  return r;
}

}  // namespace

FactorKind mp(const Rational& c) {
  if (c <= 0) throw DomainError("mp(c) requires c > 0, got " + c.get_str());
  return MpFactor{c};
}

FactorKind arcsine() { return AsFactor{}; }

FactorKind rational_factor(Polynomial numer, Polynomial denom) {
  if (numer.is_zero() || denom.is_zero())
    throw DomainError("rat(): numerator and denominator must be nonzero polynomials");
  for (const auto* p : {&numer, &denom})
    for (const auto& c : p->coefficients())
      if (c.get_den() != 1) throw DomainError("rat(): coefficients must be integers");
  if (numer.coefficient(0) == 0 || denom.coefficient(0) == 0)
    throw DomainError("rat(): S(0) must be finite and nonzero");
  return RationalFactor{std::move(numer), std::move(denom)};
}

std::pair<Polynomial, Polynomial> factor_fraction(const FactorKind& kind) {
  return std::visit(
      [](const auto& f) -> std::pair<Polynomial, Polynomial> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MpFactor>) {
          return {Polynomial::constant(1), Polynomial({Rational(1), f.c})};
        } else if constexpr (std::is_same_v<T, AsFactor>) {
          return {Polynomial({Rational(2), Rational(1)}), Polynomial({Rational(2), Rational(2)})};
        } else {
          return {f.numer, f.denom};
        }
      },
      kind);
}

MeasureSpec::MeasureSpec(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (auto& f : factors_) f.exponent.canonicalize();
}

MeasureSpec MeasureSpec::of(FactorKind kind, const Rational& exponent) {
  return MeasureSpec({Factor{std::move(kind), exponent}});
}

std::string MeasureSpec::to_string() const {
  if (factors_.empty()) return "id";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << '*';
    const auto& f = factors_[i];
    std::visit(
        [&os](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, MpFactor>) os << "mp(" << rational_text(k.c) << ')';
          else if constexpr (std::is_same_v<T, AsFactor>) os << "as";
          else os << "rat(" << coeff_list(k.numer) << ';' << coeff_list(k.denom) << ')';
        },
        f.kind);
    os << exponent_text(f.exponent);
  }
  return os.str();
}

std::complex<double> s_eval(const MeasureSpec& spec, std::complex<double> w) {
  std::complex<double> value(1.0);
  for (const auto& f : spec.factors()) {
    const auto [num, den] = factor_fraction(f.kind);
    const std::complex<double> n = num(w);
    const std::complex<double> d = den(w);
    const bool singular = f.exponent > 0 ? d == 0.0 : (f.exponent < 0 && n == 0.0);
    if (singular) {
      std::ostringstream os;
      os << "S-transform factor has a pole at w = " << w;
      throw PoleError(os.str());
    }
    const std::complex<double> base = n / d;
    if (f.exponent.get_den() == 1 && f.exponent.get_num().fits_sint_p()) {
      const long e = f.exponent.get_num().get_si();
      std::complex<double> p(1.0);
      std::complex<double> b = e >= 0 ? base : 1.0 / base;
      for (long k = 0; k < std::labs(e); ++k) p *= b;
      value *= p;
    } else {
      value *= std::pow(base, f.exponent.get_d());
    }
  }
  return value;
}

MeasureSpec boxtimes(const MeasureSpec& a, const MeasureSpec& b) {
  std::vector<Factor> f = a.factors();
  f.insert(f.end(), b.factors().begin(), b.factors().end());
  return MeasureSpec(std::move(f));
}

MeasureSpec free_power(const MeasureSpec& a, const Rational& s) {
  if (s <= 0) throw DomainError("free power requires s > 0, got " + s.get_str());
  std::vector<Factor> f = a.factors();
  for (auto& x : f) x.exponent *= s;
  return MeasureSpec(std::move(f));
}

ResolventPolynomial::ResolventPolynomial(Polynomial b, Polynomial a, int clearing_power,
                                         std::optional<MeasureSpec> source)
    : b_(std::move(b)), a_(std::move(a)), q_(clearing_power), source_(std::move(source)) {
  if (q_ < 1) throw DomainError("clearing power must be >= 1");
  if (b_.is_zero() || a_.is_zero()) throw DomainError("degenerate resolvent polynomial");
}

Rational ResolventPolynomial::coefficient(int i, int j) const {
  if (j == 0) return b_.coefficient(i);
  if (j == q_) return -a_.coefficient(i);
  return Rational(0);
}

std::vector<std::vector<Rational>> ResolventPolynomial::coefficients() const {
  const int dw = w_degree();
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(dw) + 1,
                                       std::vector<Rational>(static_cast<std::size_t>(q_) + 1, Rational(0)));
  for (int i = 0; i <= dw; ++i)
    for (int j = 0; j <= q_; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = coefficient(i, j);
  return m;
}

std::vector<std::complex<double>> ResolventPolynomial::coefficients_at(std::complex<double> z) const {
  const std::complex<double> zq = std::pow(z, q_);
  std::vector<std::complex<double>> c(static_cast<std::size_t>(w_degree()) + 1, 0.0);
  for (int i = 0; i <= b_.degree(); ++i) c[static_cast<std::size_t>(i)] += b_.coefficient(i).get_d();
  for (int i = 0; i <= a_.degree(); ++i) c[static_cast<std::size_t>(i)] -= zq * a_.coefficient(i).get_d();
  return c;
}

std::complex<double> ResolventPolynomial::operator()(std::complex<double> w, std::complex<double> z) const {
  return b_(w) - std::pow(z, q_) * a_(w);
}

double ResolventPolynomial::first_moment() const {
  if (a_.order() != q_ || b_.coefficient(0) == 0)
    throw DomainError("resolvent has no G ~ 1/z sheet (need A of order q and B(0) != 0)");
  const double ratio = Rational(b_.coefficient(0) / a_.coefficient(q_)).get_d();
  if (ratio <= 0) throw DomainError("resolvent asymptotics give a non-positive first moment");
  return std::pow(ratio, 1.0 / q_);
}

std::optional<Rational> ResolventPolynomial::exact_first_moment() const {
  first_moment();  // validates
  Rational ratio = b_.coefficient(0) / a_.coefficient(q_);
  auto n = exact_root(ratio.get_num(), static_cast<unsigned>(q_));
  auto d = exact_root(ratio.get_den(), static_cast<unsigned>(q_));
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

std::string ResolventPolynomial::to_string() const {
  std::ostringstream os;
  os << "(" << freeconv::to_string(b_, "w") << ") - z^" << q_ << " (" << freeconv::to_string(a_, "w") << ")";
  return os.str();
}

ResolventPolynomial build_resolvent(const MeasureSpec& spec) {
  mpz_class q = 1;
  for (const auto& f : spec.factors()) q = lcm(q, mpz_class(f.exponent.get_den()));
  const int qi = checked_int(q, "clearing power");

  Polynomial s_num = Polynomial::constant(1);
  Polynomial s_den = Polynomial::constant(1);
  for (const auto& f : spec.factors()) {
    const auto [num, den] = factor_fraction(f.kind);
    Rational scaled = f.exponent * q;
    const int e = checked_int(scaled.get_num(), "cleared exponent");
    if (e > 0) {
      s_num *= num.pow(static_cast<unsigned>(e));
      s_den *= den.pow(static_cast<unsigned>(e));
    } else if (e < 0) {
      s_num *= den.pow(static_cast<unsigned>(-e));
      s_den *= num.pow(static_cast<unsigned>(-e));
    }
  }
  // z^q w^q Snum = (1+w)^q Sden
  Polynomial b = Polynomial({Rational(1), Rational(1)}).pow(static_cast<unsigned>(qi)) * s_den;
  Polynomial a = Polynomial::monomial(1, qi) * s_num;
  return ResolventPolynomial(std::move(b), std::move(a), qi, spec);
}

std::complex<double> r_from_g(const ComplexFunction& g, std::complex<double> y,
                              const FixedPointOptions& opts) {
  if (y == 0.0) throw DomainError("r_from_g needs y != 0");
  const std::complex<double> inv_y = 1.0 / y;
  std::complex<double> z = inv_y;
  double damping = opts.damping;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const std::complex<double> gz = g(z);
    if (gz == 0.0) throw ConvergenceError("r_from_g: G vanished during iteration");
    const std::complex<double> step = damping * (inv_y - 1.0 / gz);
    const double size = std::abs(step);
    if (size > last_step) damping *= 0.5;
    last_step = size;
    z += step;
    if (size <= opts.tolerance * std::max(1.0, std::abs(z))) return z - inv_y;
  }
  throw ConvergenceError("r_from_g: fixed-point iteration did not converge");
}

std::complex<double> s_from_r(const ComplexFunction& r, std::complex<double> y,
                              const FixedPointOptions& opts) {
  // kappa1 = R(0), extrapolated from two small probes to cancel the linear term.
  const double h = 1e-6;
  const std::complex<double> kappa1 = 2.0 * r(h) - r(2.0 * h);
  if (std::abs(kappa1) < 1e-9) throw DomainError("s_from_r: first cumulant vanishes");
  if (y == 0.0) return 1.0 / kappa1;
  std::complex<double> z = y / kappa1;
  double damping = opts.damping;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const std::complex<double> rz = r(z);
    if (rz == 0.0) throw ConvergenceError("s_from_r: R vanished during iteration");
    const std::complex<double> step = damping * (y / rz - z);
    const double size = std::abs(step);
    if (size > last_step) damping *= 0.5;
    last_step = size;
    z += step;
    if (size <= opts.tolerance * std::max(1e-300, std::abs(z))) return z / y;
  }
  throw ConvergenceError("s_from_r: fixed-point iteration did not converge");
}

}  // namespace freeconv::measures
