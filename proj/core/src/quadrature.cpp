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

#include "freeconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "freeconv/errors.hpp"

namespace freeconv::quadrature {

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double h = 0.5 * (b - a), m = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = m + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

Rule edge_rule(double lo, double hi, int lo_power, int hi_power, int n_per_panel,
               int panels_per_half) {
  if (!(hi > lo)) throw DomainError("edge_rule: empty interval");
  if (lo_power < 1 || hi_power < 1 || panels_per_half < 1)
    throw DomainError("edge_rule: powers and panel count must be >= 1");
  const double h = 0.5 * (hi - lo);
  const Rule base = gauss_legendre(n_per_panel);
  Rule left, right;
  for (int p = 0; p < panels_per_half; ++p) {
    const double a = static_cast<double>(p) / panels_per_half;
    const double b = static_cast<double>(p + 1) / panels_per_half;
    for (int i = 0; i < n_per_panel; ++i) {
      const double t = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i];
      const double wt = 0.5 * (b - a) * base.weights[i];
      left.nodes.push_back(lo + h * std::pow(t, lo_power));
      left.weights.push_back(wt * h * lo_power * std::pow(t, lo_power - 1));
      right.nodes.push_back(hi - h * std::pow(t, hi_power));
      right.weights.push_back(wt * h * hi_power * std::pow(t, hi_power - 1));
    }
  }
  Rule out = std::move(left);
  for (std::size_t i = right.nodes.size(); i-- > 0;) {
    out.nodes.push_back(right.nodes[i]);
    out.weights.push_back(right.weights[i]);
  }
  return out;
}

double integrate_edges(const RealFunction& f, double lo, double hi, int lo_power, int hi_power,
                       int n_per_panel, int panels_per_half) {
  const Rule r = edge_rule(lo, hi, lo_power, hi_power, n_per_panel, panels_per_half);
  double s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

double integrate_adaptive(const RealFunction& f, double a, double b, double tol, double* error) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Boost supplies the 61-point rule on single panels; the bisection is
  // done here so that the error estimate is absolute (Boost 1.74 reports
  // panel errors in reference-interval units).
  struct Panel {
    double a, b, value, err;
  };
  auto panel = [&](double lo, double hi) {
    double e = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &e);
    return Panel{lo, hi, v, e * 0.5 * (hi - lo)};
  };
  std::vector<Panel> panels{panel(a, b)};
  auto total_err = [&] {
    double e = 0.0;
    for (const auto& p : panels) e += p.err;
    return e;
  };
  double err = total_err();
  for (int it = 0; it < 2000 && err > tol; ++it) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& l, const Panel& r) { return l.err < r.err; });
    const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    *worst = panel(lo, mid);
    panels.push_back(panel(mid, hi));
    err = total_err();
  }
  double v = 0.0;
  for (const auto& p : panels) v += p.value;
  if (error) *error = err;
  if (!(err <= tol) || !std::isfinite(v))
    throw QuadratureError("adaptive quadrature error estimate " + std::to_string(err) +
                          " exceeds tolerance");
  return v;
}

CdfTable::CdfTable(const RealFunction& density, double lo, double hi, int lo_power, int hi_power,
                   double atom, int panels_per_half, int order)
    : lo_(lo), hi_(hi), atom_(atom), total_(atom), lo_power_(lo_power), hi_power_(hi_power) {
  if (!(hi > lo)) throw DomainError("CdfTable: empty interval");
  const double h = 0.5 * (hi - lo);
  const Rule base = gauss_legendre(order);
  auto panel_masses = [&](int power, double edge, double sign) {
    std::vector<double> cum(panels_per_half + 1, 0.0);
    for (int p = 0; p < panels_per_half; ++p) {
      const double a = static_cast<double>(p) / panels_per_half;
      const double b = static_cast<double>(p + 1) / panels_per_half;
      double s = 0.0;
      for (int i = 0; i < order; ++i) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * base.nodes[i];
        const double x = edge + sign * h * std::pow(t, power);
        s += 0.5 * (b - a) * base.weights[i] * h * power * std::pow(t, power - 1) *
             std::max(0.0, density(x));
      }
      cum[p + 1] = cum[p] + s;
    }
    return cum;
  };
  left_ = panel_masses(lo_power, lo, 1.0);
  right_ = panel_masses(hi_power, hi, -1.0);
  total_ = atom_ + left_.back() + right_.back();
}

double CdfTable::operator()(double x) const {
  if (x < lo_) return x < 0.0 ? 0.0 : atom_;
  if (x >= hi_) return total_;
  const double h = 0.5 * (hi_ - lo_);
  const int panels = static_cast<int>(left_.size()) - 1;
  auto interp = [panels](const std::vector<double>& cum, double t) {
    const double u = std::clamp(t, 0.0, 1.0) * panels;
    const int j = std::min(static_cast<int>(u), panels - 1);
    return cum[j] + (u - j) * (cum[j + 1] - cum[j]);
  };
  if (x <= lo_ + h) {
    const double t = std::pow((x - lo_) / h, 1.0 / lo_power_);
    return atom_ + interp(left_, t);
  }
  const double t = std::pow((hi_ - x) / h, 1.0 / hi_power_);
  return atom_ + left_.back() + right_.back() - interp(right_, t);
}

}  // namespace freeconv::quadrature
