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

#include "freeconv/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "freeconv/errors.hpp"

namespace freeconv::ensembles {
namespace {

// Householder reduction to tridiagonal form; d gets the diagonal and
// e[1..n-1] the subdiagonal (e[0] = 0). Eigenvectors are not accumulated.
void tridiagonalize(Eigen::MatrixXd& a, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(a.rows());
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          double gj = 0.0;
          for (int k = 0; k <= j; ++k) gj += a(j, k) * a(i, k);
          for (int k = j + 1; k <= l; ++k) gj += a(k, j) * a(i, k);
          e[j] = gj / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          const double fj = a(i, j);
          const double gj = e[j] - hh * fj;
          e[j] = gj;
          for (int k = 0; k <= j; ++k) a(j, k) -= fj * e[k] + gj * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }
  for (int i = 0; i < n; ++i) d[i] = a(i, i);
}

double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on a symmetric tridiagonal matrix.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 50) throw ConvergenceError("tridiagonal QL: no convergence after 50 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = (r = hypot2(f, g));
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd a) {
  if (a.rows() != a.cols()) throw DomainError("symmetric_eigenvalues: matrix must be square");
  if (a.rows() == 0) return {};
  std::vector<double> d, e;
  tridiagonalize(a, d, e);
  tridiagonal_ql(d, e);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw DomainError("hermitian_eigenvalues: matrix must be square");
  if (n == 0) return {};
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev >= 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  Eigen::MatrixXd a(2 * n, 2 * n);
  // Symmetrise exactly so the embedding is symmetric to the last bit.
  const Eigen::MatrixXcd hs = 0.5 * (h + h.adjoint());
  a.topLeftCorner(n, n) = hs.real();
  a.topRightCorner(n, n) = -hs.imag();
  a.bottomLeftCorner(n, n) = hs.imag();
  a.bottomRightCorner(n, n) = hs.real();
  const std::vector<double> doubled = symmetric_eigenvalues(std::move(a));
  double scale = 0.0;
  for (double v : doubled) scale = std::max(scale, std::abs(v));
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = doubled[2 * i], y = doubled[2 * i + 1];
    if (std::abs(x - y) > 1e-8 * std::max(1.0, scale))
      throw ConvergenceError("hermitian_eigenvalues: doubled spectrum does not pair up");
    out[i] = 0.5 * (x + y);
  }
  return out;
}

}  // namespace freeconv::ensembles
