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

// Simultaneous polynomial root finding (Aberth-Ehrlich).

#include <complex>
#include <vector>

namespace freeconv {

using cplx = std::complex<double>;

struct RootOptions {
  double tolerance = 1e-14;
  int max_iterations = 500;
  /// Leading coefficients below this fraction of the largest are dropped.
  double degree_drop = 1e-14;
};

struct RootSet {
  std::vector<cplx> roots;
  /// True when leading coefficients were negligible and the degree was lowered.
  bool degree_dropped = false;
  int iterations = 0;
};

/// All roots of sum_k c[k] x^k. Throws ConvergenceError at the iteration cap.
RootSet polynomial_roots(const std::vector<cplx>& ascending, const RootOptions& opts = {});

/// Same, starting from `guesses` (used for continuation). Falls back to the
/// default start when the guess count does not match the degree.
RootSet polynomial_roots(const std::vector<cplx>& ascending, std::vector<cplx> guesses,
                         const RootOptions& opts = {});

struct RootCluster {
  cplx center;
  int multiplicity;
};

/// Groups roots closer than tol * max(1, |root|) and averages each group.
std::vector<RootCluster> cluster_roots(const std::vector<cplx>& roots, double tol);

/// Horner evaluation of an ascending coefficient list.
cplx horner(const std::vector<cplx>& ascending, cplx x);

}  // namespace freeconv
