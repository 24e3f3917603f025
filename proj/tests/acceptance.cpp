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


// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned
// here; a failing criterion is reported as such and sets the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "freeconv/closedform.hpp"
#include "freeconv/ensembles.hpp"
#include "freeconv/isotropic.hpp"
#include "freeconv/measure_parser.hpp"
#include "freeconv/moments.hpp"
#include "freeconv/resolvent.hpp"
#include "property_checks.hpp"

namespace {

using namespace freeconv;
using measures::build_resolvent;
using measures::parse_measure;
using measures::ResolventPolynomial;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets.
constexpr double kCurveRelTol = 1e-6;        // 2: oracle vs inversion, relative to curve max
constexpr int kInteriorPoints = 200;         // 2
constexpr double kEdgeMargin = 0.01;         // 2, 5
constexpr double kOracleBudget = 30.0;       // 2, seconds
constexpr double kConstructionBudget = 1.0;  // 1, seconds
constexpr double kMomentBudget = 5.0;        // 3, seconds
constexpr double kIdentityTol = 1e-8;        // 5
constexpr double kMassTol = 1e-5;            // 6
constexpr double kAtomMassTol = 1e-3;        // 6
constexpr double kEdgeTol = 1e-8;            // 7
constexpr double kKsTol = 0.05;              // 8
constexpr double kZeroFractionTol = 0.05;    // 8
constexpr double kMonteCarloBudget = 300.0;  // 8, seconds
constexpr double kRadialTol = 1e-10;         // 9
constexpr int kPropertyCases = 100;          // 10

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Equally spaced points inside [lo, hi] keeping `margin` of the width clear of each edge.
std::vector<double> interior_grid(double lo, double hi, int n, double margin) {
  const double a = lo + margin * (hi - lo), b = hi - margin * (hi - lo);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
  return xs;
}

Polynomial one_plus(const Rational& c) { return Polynomial({Rational(1), c}); }
Polynomial w_power(int k) { return Polynomial::monomial(1, k); }
Polynomial w_plus_2() { return Polynomial({Rational(2), Rational(1)}); }

// 1. Reference polynomial equations, written as B(w) = z^q A(w).
void criterion_construction() {
  struct Case {
    const char* spec;
    Polynomial b, a;
    int q;
  };
  const Polynomial u = one_plus(1);
  const Rational c(3, 5);
  const std::vector<Case> cases{
      {"mp(1)^2", u.pow(3), w_power(1), 1},                                   // wz = (1+w)^3
      {"mp(1)^(1/2)", u.pow(3), w_power(2), 2},                               // w^3 + (3-z^2)w^2 + 3w + 1
      {"mp(1)^3", u.pow(4), w_power(1), 1},                                   // wz = (1+w)^4
      {"mp(1)^(1/3)", u.pow(4), w_power(3), 3},                               // w^4 + (4-z^3)w^3 + ...
      {"mp(1/4)", u * one_plus(Rational(1, 4)), w_power(1), 1},               // zw = (1+w)(1+cw)
      {"mp(3)", u * one_plus(3), w_power(1), 1},
      {"as", u.pow(2) * Polynomial::constant(2), w_power(1) * w_plus_2(), 1},  // wz(w+2) = 2(1+w)^2
      {"as*mp(1)", u.pow(3) * Polynomial::constant(2), w_power(1) * w_plus_2(), 1},
      {"as*mp(3/5)", u.pow(2) * one_plus(c) * Polynomial::constant(2), w_power(1) * w_plus_2(), 1},
      {"as*mp(1)^2", u.pow(4) * Polynomial::constant(2), w_power(1) * w_plus_2(), 1},
      {"as^(1/2)", u.pow(3) * Polynomial::constant(2), w_power(2) * w_plus_2(), 2},
      {"as^2", u.pow(3) * Polynomial::constant(4), w_power(1) * w_plus_2().pow(2), 1},
  };
  const auto t0 = Clock::now();
  std::string bad;
  for (const auto& k : cases) {
    const auto built = build_resolvent(parse_measure(k.spec));
    if (!(built == ResolventPolynomial(k.b, k.a, k.q))) bad += std::string(bad.empty() ? "" : ",") + k.spec;
  }
  const double t = seconds_since(t0);
  report(1, "resolvent construction", bad.empty() && t < kConstructionBudget,
         std::to_string(cases.size()) + " equations, " + (bad.empty() ? "all equal" : "mismatch: " + bad) +
             fmt(", %.3f s", t));
}

// 2. Closed forms vs Stieltjes inversion on interior points.
void criterion_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_name;
  for (const auto& f : closedform::reference_families()) {
    const auto poly = build_resolvent(closedform::equivalent_spec(f));
    const auto s = closedform::support(f);
    resolvent::BranchTracker tracker(poly);
    double peak = 0.0, err = 0.0;
    for (double x : interior_grid(s.lo, s.hi, kInteriorPoints, kEdgeMargin)) {
      const double rho = resolvent::density_eval(tracker, x).rho;
      peak = std::max(peak, rho);
      err = std::max(err, std::abs(rho - closedform::eval(f, x)));
    }
    const double rel = err / peak;
    if (rel > worst) {
      worst = rel;
      worst_name = closedform::name(f);
    }
  }
  const double t = seconds_since(t0);
  report(2, "oracle equivalence", worst < kCurveRelTol && t < kOracleBudget,
         "9 families x 200 points, max rel error " + fmt("%.2e", worst) + " (" + worst_name + ")" +
             fmt(", %.2f s", t));
}

// 3. Fuss-Catalan moments from the resolvent.
void criterion_moments() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (int s = 1; s <= 4; ++s) {
    const auto m = moments::moments_from_resolvent(
        build_resolvent(parse_measure("mp(1)^" + std::to_string(s))), 12);
    for (int n = 0; n <= 12; ++n) ok = ok && m[n] == moments::fuss_catalan(s, n);
  }
  const auto cat = moments::moments_from_resolvent(build_resolvent(parse_measure("mp(1)")), 4);
  const bool catalan = cat.values == std::vector<Rational>{1, 1, 2, 5, 14};
  const double t = seconds_since(t0);
  report(3, "moment exactness", ok && catalan && t < kMomentBudget,
         std::string("s=1..4, n<=12 ") + (ok ? "exact" : "MISMATCH") + ", Catalan row " +
             (catalan ? "1,1,2,5,14" : "MISMATCH") + fmt(", %.3f s", t));
}

// 4. Bures factorisation and the isotropic chain.
void criterion_bures() {
  const auto from_s = moments::moments_from_s_transform(parse_measure("as*mp(1)"), 10);
  const ResolventPolynomial cubic(one_plus(1).pow(3) * Polynomial::constant(2), w_power(1) * w_plus_2(), 1);
  const auto from_cubic = moments::moments_from_resolvent(cubic, 10);
  const bool factor_ok = from_s == from_cubic;

  const auto sym = moments::moments_from_cumulants(isotropic::sum_unitaries_cumulants(2, 16));
  const auto as = isotropic::rescale_moments(isotropic::square_modulus_moments(sym), 2);
  bool chain_ok = as.size() >= 9;
  for (int k = 0; chain_ok && k <= 8; ++k) {
    Rational expect = moments::binomial(2 * k, k);
    for (int j = 0; j < k; ++j) expect /= 2;
    chain_ok = as[k] == expect;
  }
  report(4, "Bures factorisation", factor_ok && chain_ok,
         std::string("S-product vs cubic to order 10: ") + (factor_ok ? "equal" : "DIFFER") +
             "; unitary chain vs C(2k,k)/2^k to order 8: " + (chain_ok ? "equal" : "DIFFER"));
}

// 5. B_{2,1/2} = FC2 and generalised Bures at c = 1/2 = MP(1), pointwise.
void criterion_identities() {
  auto worst_diff = [](const char* spec, const closedform::Family& f) {
    const auto poly = build_resolvent(parse_measure(spec));
    const auto s = closedform::support(f);
    resolvent::BranchTracker tracker(poly);
    double worst = 0.0;
    for (double x : interior_grid(s.lo, s.hi, kInteriorPoints, kEdgeMargin))
      worst = std::max(worst, std::abs(resolvent::density_eval(tracker, x).rho - closedform::eval(f, x)));
    return worst;
  };
  const double b2 = worst_diff("as*mp(1)*mp(1/2)", closedform::family(closedform::Tag::FC2));
  const double gb = worst_diff("as*mp(1/2)", closedform::mp(1));
  report(5, "identities", b2 < kIdentityTol && gb < kIdentityTol,
         "max |B_{2,1/2} - FC2| " + fmt("%.2e", b2) + ", max |B_{1,1/2} - MP(1)| " + fmt("%.2e", gb));
}

// 6. Total mass, mean and continuous mass of the rank-deficient cases.
void criterion_mass() {
  double worst = 0.0;
  for (const auto& f : closedform::reference_families()) {
    const auto curve = resolvent::density_curve(build_resolvent(closedform::equivalent_spec(f)));
    const auto m = moments::moments_from_density(curve, 1);
    worst = std::max({worst, std::abs(m[0] - 1.0), std::abs(m[1] - 1.0)});
  }
  const auto c2 = resolvent::density_curve(build_resolvent(parse_measure("as*mp(2)")));
  const auto c4 = resolvent::density_curve(build_resolvent(parse_measure("as*mp(4)")));
  const bool ok = worst < kMassTol && std::abs(c2.continuous_mass - 0.5) < kAtomMassTol &&
                  std::abs(c4.continuous_mass - 0.25) < kAtomMassTol;
  report(6, "mass and atoms", ok,
         "max |mass-1|,|mean-1| " + fmt("%.2e", worst) + "; continuous mass c=2 " +
             fmt("%.6f", c2.continuous_mass) + ", c=4 " + fmt("%.6f", c4.continuous_mass));
}

// 7. Support edges.
void criterion_supports() {
  struct Case {
    const char* spec;
    double lo, hi;
  };
  const double c = 0.25, C = 4.0;
  const std::vector<Case> cases{
      {"mp(1)", 0.0, 4.0},
      {"as", 0.0, 2.0},
      {"mp(1)^2", 0.0, 27.0 / 4.0},
      {"mp(1)^3", 0.0, 256.0 / 27.0},
      {"mp(1)^(1/2)", 0.0, std::sqrt(27.0 / 4.0)},
      {"mp(1)^(1/3)", 0.0, std::cbrt(256.0 / 27.0)},
      {"as*mp(1)", 0.0, 3.0 * std::sqrt(3.0)},
      {"as*mp(1)^2", 0.0, 8.0},
      {"mp(1/4)", 1 + c - 2 * std::sqrt(c), 1 + c + 2 * std::sqrt(c)},
      {"mp(4)", 1 + C - 2 * std::sqrt(C), 1 + C + 2 * std::sqrt(C)},
  };
  double worst = 0.0;
  std::string worst_spec;
  for (const auto& k : cases) {
    const auto s = resolvent::support_edges(build_resolvent(parse_measure(k.spec)));
    const double e = std::max(std::abs(s.lo - k.lo), std::abs(s.hi - k.hi));
    if (e >= worst) {
      worst = e;
      worst_spec = k.spec;
    }
  }
  report(7, "supports", worst < kEdgeTol,
         std::to_string(cases.size()) + " supports, max edge error " + fmt("%.2e", worst) + " (" + worst_spec + ")");
}

// 8. Monte Carlo at N = 256, 40 samples.
void criterion_monte_carlo() {
  struct Case {
    const char* label;
    std::vector<Rational> ratios;
    int k;
  };
  const std::vector<Case> cases{
      {"s=1", {1}, 0},
      {"s=2", {1, 1}, 0},
      {"s=3", {1, 1, 1}, 0},
      {"bures", {1}, 2},
      {"P_{2,1/2}", {Rational(1, 2), Rational(1, 2)}, 0},
  };
  const int threads = std::max(1u, std::thread::hardware_concurrency());
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    ensembles::EnsembleConfig cfg;
    cfg.N = 256;
    cfg.samples = 40;
    cfg.seed = 2026;
    cfg.ginibre_shape_ratios = c.ratios;
    cfg.unitary_sum_k = c.k;
    const double ks = ensembles::ks_distance(ensembles::simulate(cfg, threads),
                                             ensembles::model_cdf(*ensembles::model_spec(cfg)));
    worst = std::max(worst, ks);
    detail += std::string(c.label) + fmt(" %.4f, ", ks);
  }
  ensembles::EnsembleConfig gb;
  gb.N = 256;
  gb.samples = 40;
  gb.seed = 2026;
  gb.ginibre_shape_ratios = {2};
  gb.unitary_sum_k = 2;
  const double zeros = ensembles::simulate(gb, threads).atom_fraction();
  const double t = seconds_since(t0);
  report(8, "Monte Carlo", worst < kKsTol && std::abs(zeros - 0.5) < kZeroFractionTol && t < kMonteCarloBudget,
         "KS " + detail + "zero fraction c=2 " + fmt("%.4f", zeros) + fmt(", %.1f s", t));
}

// 9. Haagerup-Larsen radial laws and the first moment of |U1+U2|^2.
void criterion_haagerup_larsen() {
  const auto mp1 = parse_measure("mp(1)"), mp2 = parse_measure("mp(1)^2");
  double e1 = 0.0, e2 = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    e1 = std::max(e1, std::abs(isotropic::radial_cdf(mp1, r) - r * r));
    e2 = std::max(e2, std::abs(isotropic::radial_cdf(mp2, r) - r));
  }
  const auto sym = moments::moments_from_cumulants(isotropic::sum_unitaries_cumulants(2, 4));
  const Rational m1 = isotropic::square_modulus_moments(sym)[1];
  report(9, "Haagerup-Larsen", e1 < kRadialTol && e2 < kRadialTol && m1 == 2,
         "max |F-r^2| " + fmt("%.2e", e1) + ", max |F-r| " + fmt("%.2e", e2) + ", m1(|U1+U2|^2) = " +
             m1.get_str());
}

// 10. Randomised property suite.
void criterion_properties() {
  const auto fams = testing::property_families();
  const std::vector<std::pair<const char*, testing::PropertyReport>> reps{
      {"conjugate closure", testing::check_conjugate_closure(fams, kPropertyCases)},
      {"Im G <= 0", testing::check_imaginary_sign(fams, kPropertyCases)},
      {"zG -> 1", testing::check_asymptotics(fams, kPropertyCases)},
      {"path independence", testing::check_path_independence(fams, kPropertyCases)},
  };
  bool ok = true;
  std::string detail = std::to_string(fams.size()) + " families x " + std::to_string(kPropertyCases) + ": ";
  for (const auto& [name, r] : reps) {
    ok = ok && r.passed();
    detail += std::string(name) + " " + std::to_string(r.failures) + " fail";
    if (!r.passed() && !r.first_failure.empty()) detail += " (" + r.first_failure + ")";
    detail += "; ";
  }
  detail.resize(detail.size() - 2);
  report(10, "property suite", ok, detail);
}

template <class F>
void guarded(int id, const char* title, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded(1, "resolvent construction", criterion_construction);
  guarded(2, "oracle equivalence", criterion_oracle);
  guarded(3, "moment exactness", criterion_moments);
  guarded(4, "Bures factorisation", criterion_bures);
  guarded(5, "identities", criterion_identities);
  guarded(6, "mass and atoms", criterion_mass);
  guarded(7, "supports", criterion_supports);
  guarded(8, "Monte Carlo", criterion_monte_carlo);
  guarded(9, "Haagerup-Larsen", criterion_haagerup_larsen);
  guarded(10, "property suite", criterion_properties);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
