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

// Numerical inversion of the resolvent equation: root sets at fixed z,
// continuation of the physical branch, Stieltjes inversion, support edges,
// density curves and the potential derivative.

#include <complex>
#include <vector>

#include "freeconv/measures.hpp"
#include "freeconv/roots.hpp"

namespace freeconv::resolvent {

using measures::ResolventPolynomial;

/// All roots in w of P(w, z) = 0, clustered multiple roots averaged.
/// `degree_dropped` (optional) reports a vanishing leading coefficient.
std::vector<cplx> roots_at(const ResolventPolynomial& poly, cplx z, bool* degree_dropped = nullptr);

struct TrackerOptions {
  /// Imaginary part of the seed point; 0 selects 1e3 * max(1, m1).
  double seed_height = 0.0;
  /// Smallest accepted path-parameter step before BranchAmbiguity.
  double min_step = 1e-10;
  /// Tolerance on the residual of z w S(w) = 1 + w before clearing.
  double residual_tol = 1e-8;
};

/// Follows the physical root of P(w, z) = 0 along paths in the upper
/// half-plane. Internally works with v = 1 + w so that G = v / z keeps full
/// relative accuracy where w is close to -1.
class BranchTracker {
 public:
  explicit BranchTracker(const ResolventPolynomial& poly, TrackerOptions opts = {});

  /// Seeds at z0 (large |z0|, Im z0 > 0) on the root closest to m1 / z0.
  void seed(cplx z0);
  /// Seeds at x + i * seed_height().
  void seed_above(double x);

  /// Continues along the straight segment to `target`. Segments with fixed
  /// real part are traversed geometrically in Im z.
  cplx move_to(cplx target);

  cplx z() const { return z_; }
  cplx w() const { return v_ - 1.0; }
  cplx v() const { return v_; }
  cplx green() const { return v_ / z_; }
  double seed_height() const { return height_; }
  double first_moment() const { return m1_; }
  const std::vector<cplx>& path() const { return path_; }
  /// Residual of the uncleared relation at the current point (NaN without a source spec).
  double uncleared_residual() const;
  bool residual_flagged() const { return flagged_; }
  const ResolventPolynomial& polynomial() const { return poly_; }

 private:
  std::vector<cplx> coefficients(cplx z) const;
  void check_residual();

  ResolventPolynomial poly_;
  TrackerOptions opts_;
  std::vector<double> b_shift_;  // B(v - 1)
  std::vector<double> a_shift_;  // A(v - 1)
  double m1_ = 1.0;
  double height_ = 1e3;
  cplx z_{0.0, 0.0};
  cplx v_{1.0, 0.0};
  std::vector<cplx> all_;
  std::size_t index_ = 0;
  bool seeded_ = false;
  bool flagged_ = false;
  std::vector<cplx> path_;
};

/// Moves horizontally at the current height to Re(target), then vertically
/// to `target`; returns w there.
cplx physical_branch(BranchTracker& tracker, cplx z_target);

/// G = (1 + w) / z at z via physical_branch.
cplx green(BranchTracker& tracker, cplx z);

/// G(z) from a fresh tracker seeded above Re z. Real z is reached from
/// above; the lower half-plane uses G(conj z) = conj G(z).
cplx green_at(const ResolventPolynomial& poly, cplx z);

struct DensityOptions {
  double eps1 = 1e-6;
  double eps2 = 1e-7;
  /// Multiplies both epsilons.
  double eps_scale = 1.0;
  /// Densities below this are reported as exactly zero.
  double zero_threshold = 1e-11;
  TrackerOptions tracker{};
};

struct DensityValue {
  double rho = 0.0;
  /// Richardson-extrapolated G(x + i0+).
  cplx green{0.0, 0.0};
  bool residual_flagged = false;
};

/// -Im G(x + i0+) / pi with linear Richardson extrapolation in epsilon.
DensityValue density_eval(const ResolventPolynomial& poly, double x, const DensityOptions& opts = {});
double density(const ResolventPolynomial& poly, double x, const DensityOptions& opts = {});

/// Same, reusing a tracker (re-seeded above x).
DensityValue density_eval(BranchTracker& tracker, double x, const DensityOptions& opts = {});

struct Support {
  double lo = 0.0;
  double hi = 0.0;
  /// Substitution powers that make the density smooth at each edge
  /// (rho ~ |x - edge|^(j/power - 1)).
  int lo_power = 2;
  int hi_power = 2;
};

/// Single-interval support of the continuous part. Edges come from the
/// critical points of z(w) and are checked against a scan of the
/// "physical root is non-real" indicator. Throws MultiIntervalError.
Support support_edges(const ResolventPolynomial& poly);

struct CurvePoint {
  double x;
  double rho;
  /// Quadrature weight of this node for integrals over the support.
  double weight;
};

struct DensityCurve {
  Support support;
  std::vector<CurvePoint> points;
  double edge_margin = 0.01;
  double atom_at_zero = 0.0;
  double continuous_mass = 0.0;
};

struct CurveOptions {
  int n_points = 512;
  double edge_margin = 0.01;
  double mass_tolerance = 1e-6;
  int threads = 1;
  DensityOptions density{};
};

/// Density sampled on an edge-clustered Gauss-Legendre grid (the nodes
/// double as a quadrature rule), plus the atom at zero from the mass deficit.
DensityCurve density_curve(const ResolventPolynomial& poly, const CurveOptions& opts = {});
DensityCurve density_curve(const ResolventPolynomial& poly, const Support& support,
                           const CurveOptions& opts = {});

/// lim_{y->0+} z G(z) along z = i y, the weight of an atom at zero.
double atom_from_green(const ResolventPolynomial& poly);

/// 2 Re G(x + i0+); throws DomainError unless lo < x < hi.
double potential_derivative(const ResolventPolynomial& poly, double x, const DensityOptions& opts = {});
double potential_derivative(const ResolventPolynomial& poly, const Support& support, double x,
                            const DensityOptions& opts = {});

}  // namespace freeconv::resolvent
