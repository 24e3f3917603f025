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

// Monte Carlo sampling of Wishart-type ensembles X X^dagger with
// X = (U_1 + ... + U_k) / sqrt(k) * G_1 ... G_s, empirical spectra and
// Kolmogorov-Smirnov distances against model CDFs.
//
// Shape convention: N_0 = N and N_i = round(N / c_i), so G_i is
// N_{i-1} x N_i and c_i is the Marchenko-Pastur parameter of factor i
// seen from the N side. The spectrum of X X^dagger then has
// S(w) = S_k(w) * prod_i 1 / (1 + c_i w), with an atom at zero whenever
// some N_i < N.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "freeconv/eigensolver.hpp"
#include "freeconv/measures.hpp"

namespace freeconv::ensembles {

using CMatrix = Eigen::MatrixXcd;

/// SplitMix64 finaliser, used to derive per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seedable 64-bit generator (std::mt19937_64) with Box-Muller normals.
class Rng {
 public:
  static constexpr const char* algorithm =
      "mt19937_64; stream seed = splitmix64(seed ^ splitmix64(index)); box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for sample `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on (0, 1] with 53 random bits.
  double uniform();
  /// Standard real normal.
  double normal();
  /// Complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// rows x cols matrix of i.i.d. complex normals with unit variance.
CMatrix sample_ginibre(int rows, int cols, Rng& rng);

/// Haar unitary from the QR decomposition of a Ginibre draw with the
/// phases of diag(R) divided out.
CMatrix sample_haar_unitary(int n, Rng& rng);

struct EnsembleConfig {
  int N = 256;
  std::vector<Rational> ginibre_shape_ratios{Rational(1)};
  int unitary_sum_k = 0;
  int samples = 40;
  std::uint64_t seed = 1;

  /// Throws DomainError on N < 2, a non-positive ratio or samples < 1.
  void validate() const;
  /// Chain dimensions N_0 = N, N_i = round(N / c_i).
  std::vector<int> dimensions() const;
};

struct EmpiricalSpectrum {
  /// Rescaled eigenvalues of X X^dagger (N per sample), ascending,
  /// clipped at 0. Structural zeros of rectangular chains are stored as 0.
  std::vector<double> values;
  /// Number of (near-)zero eigenvalues over all samples.
  std::size_t zero_count = 0;
  int samples = 0;

  double atom_fraction() const {
    return values.empty() ? 0.0 : static_cast<double>(zero_count) / values.size();
  }
};

/// Near-zero threshold relative to the largest eigenvalue of a sample.
inline constexpr double kZeroThreshold = 1e-8;

/// The product matrix X for one sample. Throws ShapeError when a chain
/// dimension rounds to zero.
CMatrix build_matrix(const EnsembleConfig& cfg, Rng& rng);

/// Spectrum of X X^dagger for one sample; the eigensolve runs on the
/// smaller Gram side and the structural zeros are appended.
EmpiricalSpectrum build_sample(const EnsembleConfig& cfg, Rng& rng);

/// All samples merged. Sample i uses Rng::stream(cfg.seed, i), so the
/// result does not depend on `threads`.
EmpiricalSpectrum simulate(const EnsembleConfig& cfg, int threads = 1);

/// Sup distance between the empirical CDF (atoms included) and `model_cdf`.
/// The model is assumed to put no mass below 0.
double ks_distance(const EmpiricalSpectrum& spectrum, const std::function<double(double)>& model_cdf);

struct HistogramBin {
  double lo, hi, density;
};

/// Histogram of the eigenvalues other than exact zeros on [lo, hi], normalised by the
/// total eigenvalue count so the bars integrate to the continuous mass.
/// hi <= lo selects [0, max eigenvalue].
std::vector<HistogramBin> histogram(const EmpiricalSpectrum& spectrum, int bins, double lo = 0.0,
                                    double hi = 0.0);

/// Limiting law of the configuration: the arcsine factor for k = 2,
/// nothing for k in {0, 1}, times mp(c_i) per Ginibre factor. Empty for
/// k > 2, whose law is not a finite product of supported factors.
std::optional<measures::MeasureSpec> model_spec(const EnsembleConfig& cfg);

/// CDF of a measure computed by Stieltjes inversion of its resolvent.
std::function<double(double)> model_cdf(const measures::MeasureSpec& spec);

/// Empirical moments (1/n) sum x^j for j = 0..K.
std::vector<double> empirical_moments(const EmpiricalSpectrum& spectrum, int K);

}  // namespace freeconv::ensembles
