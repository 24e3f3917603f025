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

#include "freeconv/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "freeconv/errors.hpp"
#include "freeconv/log.hpp"
#include "freeconv/quadrature.hpp"

namespace freeconv::resolvent {
namespace {

constexpr double kPi = std::numbers::pi;

// Single-linkage tolerance for merging numerically split multiple roots;
// an m-fold root is only resolved to about eps^(1/m).
constexpr double kClusterTol = 1e-3;

std::vector<cplx> to_complex(const std::vector<double>& c) { return {c.begin(), c.end()}; }

std::vector<cplx> to_complex(const Polynomial& p) { return to_complex(p.to_double()); }

double nearest_two(const std::vector<cplx>& roots, cplx target, std::size_t& best, double& second) {
  double d1 = std::numeric_limits<double>::infinity();
  second = std::numeric_limits<double>::infinity();
  best = 0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double d = std::abs(roots[k] - target);
    if (d < d1) {
      second = d1;
      d1 = d;
      best = k;
    } else if (d < second) {
      second = d;
    }
  }
  return d1;
}

}  // namespace

std::vector<cplx> roots_at(const ResolventPolynomial& poly, cplx z, bool* degree_dropped) {
  const RootSet rs = polynomial_roots(poly.coefficients_at(z));
  if (degree_dropped) *degree_dropped = rs.degree_dropped;
  std::vector<cplx> out;
  for (const auto& c : cluster_roots(rs.roots, kClusterTol))
    out.insert(out.end(), static_cast<std::size_t>(c.multiplicity), c.center);
  return out;
}

BranchTracker::BranchTracker(const ResolventPolynomial& poly, TrackerOptions opts)
    : poly_(poly), opts_(opts) {
  b_shift_ = poly_.z_free_part().taylor_shift(-1).to_double();
  a_shift_ = poly_.z_part().taylor_shift(-1).to_double();
  m1_ = poly_.first_moment();
  height_ = opts_.seed_height > 0 ? opts_.seed_height : 1e3 * std::max(1.0, m1_);
}

std::vector<cplx> BranchTracker::coefficients(cplx z) const {
  const std::size_t n = std::max(b_shift_.size(), a_shift_.size());
  const cplx zq = std::pow(z, poly_.clearing_power());
  std::vector<cplx> c(n, 0.0);
  for (std::size_t i = 0; i < b_shift_.size(); ++i) c[i] += b_shift_[i];
  for (std::size_t i = 0; i < a_shift_.size(); ++i) c[i] -= zq * a_shift_[i];
  return c;
}

void BranchTracker::seed(cplx z0) {
  all_ = polynomial_roots(coefficients(z0)).roots;
  if (all_.empty()) throw DomainError("resolvent polynomial has no roots at the seed point");
  const cplx target = 1.0 + m1_ / z0;
  double d2 = 0.0;
  const double d1 = nearest_two(all_, target, index_, d2);
  if (all_.size() > 1 && !(d2 >= 2.0 * d1)) {
    std::ostringstream os;
    os << "seed point " << z0 << " does not isolate the physical root; raise the seed height";
    throw BranchAmbiguity(os.str());
  }
  z_ = z0;
  v_ = all_[index_];
  seeded_ = true;
  flagged_ = false;
  path_.assign(1, z0);
}

void BranchTracker::seed_above(double x) { seed(cplx(x, height_)); }

cplx BranchTracker::move_to(cplx target) {
  if (!seeded_) throw DomainError("BranchTracker::move_to before seed");
  if (target.imag() < 0.0) throw DomainError("continuation is restricted to the closed upper half-plane");
  const cplx za = z_;
  if (target == za) return w();
  const double ya = za.imag(), yb = target.imag();
  const bool geometric = za.real() == target.real() && ya > 0.0 && yb > 0.0;
  const double log_ratio = geometric ? std::log(yb / ya) : 0.0;
  auto at = [&](double s) -> cplx {
    if (s >= 1.0) return target;
    if (geometric) return {za.real(), ya * std::exp(s * log_ratio)};
    return za + s * (target - za);
  };
  const double max_step = geometric ? std::min(1.0, 1.0 / std::abs(log_ratio)) : 1.0;
  double ds = geometric ? 0.5 * max_step
                        : std::min(1.0, 0.25 * std::max(ya, 1e-3 * std::abs(target - za)) /
                                            std::abs(target - za));
  double s = 0.0, prev_s = 0.0;
  std::vector<cplx> prev;
  while (s < 1.0) {
    const double step = std::min(ds, 1.0 - s);
    const double s_new = s + step >= 1.0 ? 1.0 : s + step;
    const cplx zn = at(s_new);
    std::vector<cplx> guess = all_;
    if (!prev.empty()) {
      const double r = (s_new - s) / (s - prev_s);
      for (std::size_t k = 0; k < guess.size(); ++k) guess[k] += (all_[k] - prev[k]) * r;
    }
    bool accept = false;
    std::vector<cplx> found;
    try {
      RootSet rs = polynomial_roots(coefficients(zn), guess);
      found = std::move(rs.roots);
      if (found.size() == all_.size()) {
        if (found.size() == 1) {
          accept = true;
        } else {
          std::size_t j = 0;
          double d2 = 0.0;
          const double d1 = nearest_two(found, guess[index_], j, d2);
          double sep = std::numeric_limits<double>::infinity();
          for (std::size_t k = 0; k < all_.size(); ++k)
            if (k != index_) sep = std::min(sep, std::abs(all_[k] - v_));
          const double floor = 1e-14 * std::abs(v_);
          accept = d1 <= floor || (d2 >= 2.0 * d1 && d1 <= 0.5 * sep);
        }
      }
    } catch (const ConvergenceError&) {
      accept = false;
    }
    if (!accept) {
      ds = 0.5 * step;
      if (ds < opts_.min_step) {
        std::ostringstream os;
        os << "continuation step collapsed near z = " << zn << " (roots too close to separate)";
        throw BranchAmbiguity(os.str());
      }
      continue;
    }
    // Keep the root order aligned with the predictions, physical root first.
    std::vector<cplx> ordered(found.size());
    std::vector<bool> used(found.size(), false);
    auto assign = [&](std::size_t k) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < found.size(); ++j)
        if (!used[j] && std::abs(found[j] - guess[k]) < bd) {
          bd = std::abs(found[j] - guess[k]);
          best = j;
        }
      used[best] = true;
      ordered[k] = found[best];
    };
    assign(index_);
    for (std::size_t k = 0; k < found.size(); ++k)
      if (k != index_) assign(k);
    prev = std::move(all_);
    prev_s = s;
    all_ = std::move(ordered);
    v_ = all_[index_];
    s = s_new;
    z_ = zn;
    path_.push_back(zn);
    ds = std::min(1.5 * step, max_step);
  }
  z_ = target;
  check_residual();
  return w();
}

double BranchTracker::uncleared_residual() const {
  if (!poly_.source()) return std::numeric_limits<double>::quiet_NaN();
  try {
    const cplx w = v_ - 1.0;
    const cplx s = measures::s_eval(*poly_.source(), w);
    return std::abs(z_ * w * s - v_) / std::max(1.0, std::abs(v_));
  } catch (const PoleError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void BranchTracker::check_residual() {
  const double r = uncleared_residual();
  if (std::isfinite(r) && r > opts_.residual_tol) flagged_ = true;
}

cplx physical_branch(BranchTracker& tracker, cplx z_target) {
  const cplx here = tracker.z();
  if (here.real() != z_target.real()) tracker.move_to(cplx(z_target.real(), here.imag()));
  return tracker.move_to(z_target);
}

cplx green(BranchTracker& tracker, cplx z) {
  physical_branch(tracker, z);
  return tracker.green();
}

cplx green_at(const ResolventPolynomial& poly, cplx z) {
  if (z.imag() < 0.0) return std::conj(green_at(poly, std::conj(z)));
  BranchTracker t(poly);
  if (z.imag() >= t.seed_height()) {
    t.seed(z);
    return t.green();
  }
  t.seed_above(z.real());
  if (z.imag() == 0.0) {
    t.move_to(cplx(z.real(), 1e-10 * std::max(1.0, std::abs(z.real()))));
    t.move_to(z);
    if (z == 0.0) throw PoleError("G is not defined at z = 0");
    return t.green();
  }
  t.move_to(z);
  return t.green();
}

DensityValue density_eval(BranchTracker& tracker, double x, const DensityOptions& opts) {
  const double xe = x == 0.0 ? 1e-10 : x;
  const double e1 = opts.eps1 * opts.eps_scale;
  const double e2 = opts.eps2 * opts.eps_scale;
  if (!(e1 > e2 && e2 > 0.0)) throw DomainError("density: need eps1 > eps2 > 0");
  tracker.seed_above(xe);
  tracker.move_to(cplx(xe, e1));
  const cplx g1 = tracker.green();
  const bool flag1 = tracker.residual_flagged();
  tracker.move_to(cplx(xe, e2));
  const cplx g2 = tracker.green();
  DensityValue out;
  out.green = (e1 * g2 - e2 * g1) / (e1 - e2);
  out.residual_flagged = flag1 || tracker.residual_flagged();
  double rho = -out.green.imag() / kPi;
  if (rho < -1e-12) {
    std::ostringstream os;
    os << "negative density " << rho << " at x = " << x << " clipped to 0";
    warn(os.str());
  }
  if (rho < opts.zero_threshold) rho = 0.0;
  out.rho = rho;
  return out;
}

DensityValue density_eval(const ResolventPolynomial& poly, double x, const DensityOptions& opts) {
  BranchTracker t(poly, opts.tracker);
  return density_eval(t, x, opts);
}

double density(const ResolventPolynomial& poly, double x, const DensityOptions& opts) {
  return density_eval(poly, x, opts).rho;
}

namespace {

struct Candidate {
  double x;
  int power;
};

// Physical root visibly off the real axis just above x.
bool inside_support(BranchTracker& t, double x) {
  const double xe = x == 0.0 ? 1e-10 : x;
  t.seed_above(xe);
  t.move_to(cplx(xe, 1e-9));
  return std::abs(t.v().imag()) > 1e-6 * std::max(1.0, std::abs(t.v()));
}

double bisect_edge(BranchTracker& t, double in, double out) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (in + out);
    if (inside_support(t, mid)) in = mid;
    else out = mid;
    if (std::abs(out - in) <= 1e-10 * std::max(1e-300, std::abs(in) + std::abs(out))) break;
  }
  return 0.5 * (in + out);
}

}  // namespace

Support support_edges(const ResolventPolynomial& poly) {
  Polynomial b = poly.z_free_part();
  Polynomial a = poly.z_part();
  const Polynomial g = gcd(b, a);
  if (g.degree() > 0) {
    b = divmod(b, g).first;
    a = divmod(a, g).first;
  }
  const int q = poly.clearing_power();

  std::vector<Candidate> cand;
  {
    const int m = b.multiplicity_at(Rational(-1));
    const int k = m > 0 ? m / std::gcd(m, q) : 2;
    cand.push_back({0.0, std::max(1, k)});
  }
  const Polynomial crit = a * b.derivative() - b * a.derivative();
  if (!crit.is_zero()) {
    const auto factors = squarefree_factors(crit);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].degree() < 1) continue;
      for (const cplx r : polynomial_roots(to_complex(factors[i])).roots) {
        if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r))) continue;
        const double wr = r.real();
        const double av = a(cplx(wr)).real();
        const double bv = b(cplx(wr)).real();
        if (av == 0.0) continue;
        const double ratio = bv / av;
        if (!(ratio > 0.0)) continue;
        cand.push_back({std::pow(ratio, 1.0 / q), static_cast<int>(i) + 2});
      }
    }
  }
  if (a.degree() == b.degree()) {
    const Rational lead = b.leading() / a.leading();
    if (lead > 0) {
      const int k = a.degree() - (b - a * lead).degree();
      cand.push_back({std::pow(lead.get_d(), 1.0 / q), std::max(1, k)});
    }
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& l, const Candidate& r) { return l.x < r.x; });
  std::vector<Candidate> uniq;
  for (const auto& c : cand) {
    if (!uniq.empty() && std::abs(c.x - uniq.back().x) <= 1e-9 * std::max(1.0, c.x))
      uniq.back().power = std::max(uniq.back().power, c.power);
    else
      uniq.push_back(c);
  }

  BranchTracker t(poly);
  const std::size_t n = uniq.size();
  std::vector<bool> inside(n, false);  // interval (uniq[i], uniq[i+1]) or the tail
  for (std::size_t i = 0; i < n; ++i) {
    const double mid = i + 1 < n ? 0.5 * (uniq[i].x + uniq[i + 1].x) : 2.0 * uniq[i].x + 1.0;
    inside[i] = inside_support(t, mid);
  }
  std::size_t first = n, last = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (inside[i]) {
      if (first == n) first = i;
      last = i;
    }
  if (first == n) throw DomainError("measure has no continuous part");
  for (std::size_t i = first; i <= last; ++i)
    if (!inside[i]) throw MultiIntervalError("support of the continuous part is not a single interval");

  Support s;
  s.lo = uniq[first].x;
  s.lo_power = uniq[first].power;
  if (last + 1 < n) {
    s.hi = uniq[last + 1].x;
    s.hi_power = uniq[last + 1].power;
  } else {
    // No critical value closes the support; fall back to bisection.
    double out = 2.0 * uniq[last].x + 1.0;
    while (inside_support(t, out)) out *= 2.0;
    s.hi = bisect_edge(t, uniq[last].x + 0.5 * (out - uniq[last].x) * 1e-3, out);
    s.hi_power = 2;
  }

  // Scan for further intervals the candidate analysis could have missed.
  int changes = 0;
  bool prev = false;
  const int scan = 200;
  for (int i = 0; i <= scan; ++i) {
    const double x = 1.2 * s.hi * i / scan;
    const bool in = inside_support(t, x);
    if (i > 0 && in != prev) ++changes;
    prev = in;
  }
  if (changes > 2) throw MultiIntervalError("support indicator changes sign more than twice");
  return s;
}

double atom_from_green(const ResolventPolynomial& poly) {
  BranchTracker t(poly);
  t.seed_above(0.0);
  t.move_to(cplx(0.0, 1e-12));
  return std::max(0.0, t.v().real());
}

DensityCurve density_curve(const ResolventPolynomial& poly, const CurveOptions& opts) {
  return density_curve(poly, support_edges(poly), opts);
}

DensityCurve density_curve(const ResolventPolynomial& poly, const Support& support,
                           const CurveOptions& opts) {
  if (opts.n_points < 4) throw DomainError("density_curve needs at least 4 points");
  const int half = opts.n_points / 2;
  const quadrature::Rule rule =
      quadrature::edge_rule(support.lo, support.hi, support.lo_power, support.hi_power, half, 1);
  DensityCurve curve;
  curve.support = support;
  curve.edge_margin = opts.edge_margin;
  curve.points.resize(rule.nodes.size());

  const BranchTracker proto(poly, opts.density.tracker);
  auto work = [&](std::size_t begin, std::size_t end, bool& flagged) {
    BranchTracker t = proto;
    for (std::size_t i = begin; i < end; ++i) {
      const double x = rule.nodes[i];
      DensityOptions d = opts.density;
      const double dist = std::min(x - support.lo, support.hi - x);
      d.eps_scale *= std::min(1.0, dist);
      const DensityValue v = density_eval(t, x, d);
      flagged = flagged || v.residual_flagged;
      curve.points[i] = {x, v.rho, rule.weights[i]};
    }
  };
  const int threads = std::max(1, opts.threads);
  const std::size_t n = rule.nodes.size();
  std::vector<char> flags(static_cast<std::size_t>(threads), 0);
  if (threads == 1) {
    bool f = false;
    work(0, n, f);
    flags[0] = f;
  } else {
    std::vector<std::thread> pool;
    std::vector<bool> local(static_cast<std::size_t>(threads), false);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (int k = 0; k < threads; ++k) {
      const std::size_t b = std::min(n, k * chunk), e = std::min(n, (k + 1) * chunk);
      pool.emplace_back([&, b, e, k] {
        bool f = false;
        work(b, e, f);
        flags[static_cast<std::size_t>(k)] = f;
      });
    }
    for (auto& th : pool) th.join();
  }
  if (std::any_of(flags.begin(), flags.end(), [](char c) { return c != 0; }))
    warn("uncleared resolvent residual above tolerance on part of the density grid");

  double mass = 0.0;
  for (const auto& p : curve.points) mass += p.weight * p.rho;
  curve.continuous_mass = mass;
  if (mass < 1.0 - opts.mass_tolerance) {
    curve.atom_at_zero = std::max(0.0, 1.0 - mass);
    if (support.lo > 0.0) {
      const double check = atom_from_green(poly);
      if (std::abs(check - curve.atom_at_zero) > 1e-3) {
        std::ostringstream os;
        os << "atom from mass deficit (" << curve.atom_at_zero << ") disagrees with lim zG(z) ("
           << check << ")";
        warn(os.str());
      }
    }
  }
  return curve;
}

double potential_derivative(const ResolventPolynomial& poly, const Support& support, double x,
                            const DensityOptions& opts) {
  if (!(x > support.lo && x < support.hi)) {
    std::ostringstream os;
    os << "potential_derivative: x = " << x << " is not inside the support [" << support.lo << ", "
       << support.hi << "]";
    throw DomainError(os.str());
  }
  return 2.0 * density_eval(poly, x, opts).green.real();
}

double potential_derivative(const ResolventPolynomial& poly, double x, const DensityOptions& opts) {
  return potential_derivative(poly, support_edges(poly), x, opts);
}

}  // namespace freeconv::resolvent
