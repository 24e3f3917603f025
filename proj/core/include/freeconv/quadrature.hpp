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

#pragma once

// Gauss-Legendre rules, edge-substituted composite rules for densities
// with algebraic endpoint behaviour, adaptive Gauss-Kronrod, and a
// tabulated cumulative distribution.

#include <functional>
#include <vector>

namespace freeconv::quadrature {

using RealFunction = std::function<double(double)>;

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);
/// Same rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

/// Composite rule for the integral over [lo, hi]. The interval is split at
/// the midpoint; the left half uses x = lo + h t^lo_power and the right half
/// x = hi - h t^hi_power with t in [0, 1] (h = half width), which removes
/// endpoint singularities of type |x - edge|^(j/power - 1). Nodes are
/// returned in ascending x.
Rule edge_rule(double lo, double hi, int lo_power, int hi_power, int n_per_panel = 16,
               int panels_per_half = 4);

double integrate_edges(const RealFunction& f, double lo, double hi, int lo_power, int hi_power,
                       int n_per_panel = 16, int panels_per_half = 4);

/// Adaptive 61-point Gauss-Kronrod. Throws QuadratureError when the error
/// estimate stays above `tol`.
double integrate_adaptive(const RealFunction& f, double a, double b, double tol = 1e-9,
                          double* error = nullptr);

/// Cumulative distribution atom + int_lo^x f, tabulated once and
/// interpolated linearly in the substituted variable.
class CdfTable {
 public:
  CdfTable(const RealFunction& density, double lo, double hi, int lo_power, int hi_power,
           double atom, int panels_per_half = 128, int order = 8);

  double operator()(double x) const;
  /// Atom plus integrated continuous mass.
  double total() const { return total_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_, atom_, total_;
  int lo_power_, hi_power_;
  // Cumulative mass at the panel boundaries t_j = j / panels of each half.
  std::vector<double> left_, right_;
};

}  // namespace freeconv::quadrature
