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

#include "freeconv/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "freeconv/errors.hpp"

namespace freeconv {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Eval {
  cplx newton;     // p / p'
  double backward; // |p(x)| / (sum |c_k| |x|^k)
};

// Newton correction and backward error, using the reversed polynomial
// outside the unit disk.
Eval newton_step(const std::vector<cplx>& c, cplx x) {
  const int n = static_cast<int>(c.size()) - 1;
  const double ax = std::abs(x);
  if (ax <= 1.0) {
    cplx p = c[n], dp = 0.0;
    double bound = std::abs(c[n]);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[k];
      bound = bound * ax + std::abs(c[k]);
    }
    return {dp == 0.0 ? cplx(0.0) : p / dp, bound > 0 ? std::abs(p) / bound : 0.0};
  }
  const cplx y = 1.0 / x;
  const double ay = std::abs(y);
  cplx r = c[0], dr = 0.0;
  double bound = std::abs(c[0]);
  for (int k = 1; k <= n; ++k) {
    dr = dr * y + r;
    r = r * y + c[k];
    bound = bound * ay + std::abs(c[k]);
  }
  const cplx denom = y * (static_cast<double>(n) - y * dr / r);
  return {denom == 0.0 ? cplx(0.0) : 1.0 / denom, bound > 0 ? std::abs(r) / bound : 0.0};
}

std::vector<cplx> initial_circle(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  const double lead = std::abs(c[n]);
  double radius = 0.0;
  for (int k = 1; k <= n; ++k) {
    double t = std::abs(c[n - k]) / lead;
    if (k == n) t *= 0.5;
    radius = std::max(radius, std::pow(t, 1.0 / k));
  }
  radius = 2.0 * radius;
  if (radius == 0.0) radius = 1.0;
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k)
    z[k] = std::polar(radius * (0.5 + 0.5 * (k + 1) / n),
                      2.0 * std::numbers::pi * k / n + 0.4);
  return z;
}

}  // namespace

cplx horner(const std::vector<cplx>& c, cplx x) {
  cplx p = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * x + *it;
  return p;
}

RootSet polynomial_roots(const std::vector<cplx>& ascending, const RootOptions& opts) {
  return polynomial_roots(ascending, {}, opts);
}

RootSet polynomial_roots(const std::vector<cplx>& ascending, std::vector<cplx> guesses,
                         const RootOptions& opts) {
  RootSet out;
  std::vector<cplx> c = ascending;
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw DomainError("polynomial_roots: zero polynomial");
  while (!c.empty() && std::abs(c.back()) <= opts.degree_drop * scale) {
    if (c.back() != 0.0) out.degree_dropped = true;
    c.pop_back();
  }
  if (c.size() < ascending.size() && !out.degree_dropped) out.degree_dropped = true;
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return out;
  if (n == 1) {
    out.roots = {-c[0] / c[1]};
    return out;
  }
  for (auto& v : c) v /= scale;

  std::vector<cplx> z;
  if (static_cast<int>(guesses.size()) == n) {
    z = std::move(guesses);
    // Aberth needs distinct starting points.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(z[i] - z[j]) <= 1e-12 * std::max(1.0, std::abs(z[i])))
          z[i] += std::polar(1e-7 * std::max(1.0, std::abs(z[i])), 0.7 + i);
  } else {
    z = initial_circle(c);
  }

  std::vector<bool> done(n, false);
  int remaining = n;
  for (int it = 0; it < opts.max_iterations && remaining > 0; ++it) {
    out.iterations = it + 1;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Eval e = newton_step(c, z[i]);
      if (e.backward <= 4.0 * n * kEps) {
        done[i] = true;
        --remaining;
        continue;
      }
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cplx denom = 1.0 - e.newton * sum;
      const cplx delta = denom == 0.0 ? e.newton : e.newton / denom;
      z[i] -= delta;
      if (std::abs(delta) <= opts.tolerance * std::abs(z[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw ConvergenceError("polynomial_roots: Aberth iteration did not converge");
  out.roots = std::move(z);
  return out;
}

std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol) {
  std::vector<RootCluster> out;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= tol * std::max(1.0, std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

}  // namespace freeconv
