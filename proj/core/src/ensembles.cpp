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

#include "freeconv/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <thread>

#include "freeconv/errors.hpp"
#include "freeconv/quadrature.hpp"
#include "freeconv/resolvent.hpp"

namespace freeconv::ensembles {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index)));
}

double Rng::uniform() {
  // (0, 1]: the complement of the usual [0, 1) 53-bit draw.
  return 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::complex<double> Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

CMatrix sample_ginibre(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1) throw ShapeError("sample_ginibre: dimensions must be positive");
  CMatrix g(rows, cols);
  // Column-major fill keeps the draw order independent of Eigen internals.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

CMatrix sample_haar_unitary(int n, Rng& rng) {
  if (n < 1) throw ShapeError("sample_haar_unitary: dimension must be positive");
  const CMatrix g = sample_ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double m = std::abs(d);
    if (m > 0.0) q.col(j) *= d / m;
  }
  return q;
}

void EnsembleConfig::validate() const {
  if (N < 2) throw DomainError("ensemble: N must be at least 2");
  if (samples < 1) throw DomainError("ensemble: samples must be at least 1");
  if (unitary_sum_k < 0) throw DomainError("ensemble: unitary_sum_k must be non-negative");
  for (const Rational& c : ginibre_shape_ratios)
    if (sgn(c) <= 0) throw DomainError("ensemble: shape ratios must be positive");
}

std::vector<int> EnsembleConfig::dimensions() const {
  std::vector<int> dims{N};
  for (const Rational& c : ginibre_shape_ratios) {
    const double d = std::round(static_cast<double>(N) / c.get_d());
    if (d < 1.0) throw ShapeError("ensemble: shape ratio " + c.get_str() + " gives an empty factor");
    if (d > 1e6) throw ShapeError("ensemble: shape ratio " + c.get_str() + " gives a factor too large");
    dims.push_back(static_cast<int>(d));
  }
  return dims;
}

CMatrix build_matrix(const EnsembleConfig& cfg, Rng& rng) {
  cfg.validate();
  const std::vector<int> dims = cfg.dimensions();
  CMatrix x;
  if (cfg.unitary_sum_k > 0) {
    x = sample_haar_unitary(cfg.N, rng);
    for (int i = 1; i < cfg.unitary_sum_k; ++i) x += sample_haar_unitary(cfg.N, rng);
    x /= std::sqrt(static_cast<double>(cfg.unitary_sum_k));
  }
  for (std::size_t i = 1; i < dims.size(); ++i) {
    CMatrix g = sample_ginibre(dims[i - 1], dims[i], rng);
    g /= std::sqrt(static_cast<double>(dims[i]));
    if (x.size() == 0) {
      x = std::move(g);
    } else {
      CMatrix next = x * g;
      x = std::move(next);
    }
  }
  if (x.size() == 0) x = CMatrix::Identity(cfg.N, cfg.N);
  return x;
}

EmpiricalSpectrum build_sample(const EnsembleConfig& cfg, Rng& rng) {
  const CMatrix x = build_matrix(cfg, rng);
  const bool wide = x.cols() >= x.rows();
  const CMatrix gram = wide ? CMatrix(x * x.adjoint()) : CMatrix(x.adjoint() * x);
  std::vector<double> ev = hermitian_eigenvalues(gram);
  const double top = ev.empty() ? 0.0 : std::max(0.0, ev.back());
  EmpiricalSpectrum out;
  out.samples = 1;
  out.values.reserve(static_cast<std::size_t>(cfg.N));
  for (double v : ev) {
    if (v < kZeroThreshold * top) ++out.zero_count;
    out.values.push_back(std::max(v, 0.0));
  }
  // Structural zeros of X X^dagger not seen by the smaller Gram matrix.
  for (Eigen::Index i = x.cols(); i < x.rows(); ++i) {
    out.values.push_back(0.0);
    ++out.zero_count;
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

EmpiricalSpectrum simulate(const EnsembleConfig& cfg, int threads) {
  cfg.validate();
  (void)cfg.dimensions();
  const int n = cfg.samples;
  std::vector<EmpiricalSpectrum> parts(static_cast<std::size_t>(n));
  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(i));
      parts[static_cast<std::size_t>(i)] = build_sample(cfg, rng);
    }
  };
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      const int begin = n * t / threads, end = n * (t + 1) / threads;
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  EmpiricalSpectrum out;
  out.samples = n;
  for (const auto& p : parts) {
    out.values.insert(out.values.end(), p.values.begin(), p.values.end());
    out.zero_count += p.zero_count;
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double ks_distance(const EmpiricalSpectrum& spectrum, const std::function<double(double)>& model_cdf) {
  const auto& v = spectrum.values;
  if (v.empty()) throw DomainError("ks_distance: empty spectrum");
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    const double f = model_cdf(v[i]);
    // Left limit of the model: nothing below zero, continuous elsewhere.
    const double f_left = v[i] <= 0.0 ? 0.0 : f;
    d = std::max(d, std::abs(f_left - static_cast<double>(i) / n));
    d = std::max(d, std::abs(f - static_cast<double>(j) / n));
    i = j;
  }
  return d;
}

std::vector<HistogramBin> histogram(const EmpiricalSpectrum& spectrum, int bins, double lo, double hi) {
  if (bins < 1) throw DomainError("histogram: bins must be positive");
  if (spectrum.values.empty()) throw DomainError("histogram: empty spectrum");
  if (hi <= lo) {
    lo = 0.0;
    hi = std::max(spectrum.values.back(), 1e-300);
  }
  const double width = (hi - lo) / bins;
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double x : spectrum.values) {
    if (x == 0.0 || x < lo || x > hi) continue;
    int k = static_cast<int>((x - lo) / width);
    k = std::clamp(k, 0, bins - 1);
    counts[static_cast<std::size_t>(k)] += 1.0;
  }
  const double total = static_cast<double>(spectrum.values.size());
  std::vector<HistogramBin> out;
  out.reserve(counts.size());
  for (int k = 0; k < bins; ++k)
    out.push_back({lo + k * width, lo + (k + 1) * width, counts[static_cast<std::size_t>(k)] / (total * width)});
  return out;
}

std::optional<measures::MeasureSpec> model_spec(const EnsembleConfig& cfg) {
  if (cfg.unitary_sum_k > 2) return std::nullopt;
  measures::MeasureSpec spec;
  if (cfg.unitary_sum_k == 2) spec = measures::MeasureSpec::of(measures::arcsine());
  for (const Rational& c : cfg.ginibre_shape_ratios)
    spec = measures::boxtimes(spec, measures::MeasureSpec::of(measures::mp(c)));
  return spec;
}

std::function<double(double)> model_cdf(const measures::MeasureSpec& spec) {
  if (spec.is_identity()) return [](double x) { return x < 1.0 ? 0.0 : 1.0; };
  const measures::ResolventPolynomial poly = measures::build_resolvent(spec);
  const resolvent::Support sup = resolvent::support_edges(poly);
  auto tracker = std::make_shared<resolvent::BranchTracker>(poly);
  auto rho = [tracker, sup](double x) {
    resolvent::DensityOptions opts;
    const double dist = std::min(x - sup.lo, sup.hi - x) / (sup.hi - sup.lo);
    opts.eps_scale = std::clamp(dist, 1e-6, 1.0);
    return resolvent::density_eval(*tracker, x, opts).rho;
  };
  auto table = std::make_shared<quadrature::CdfTable>(rho, sup.lo, sup.hi, sup.lo_power, sup.hi_power, 0.0);
  double atom = 1.0 - table->total();
  if (atom < 1e-6) atom = 0.0;
  return [table, atom](double x) {
    if (x < 0.0) return 0.0;
    return std::min(1.0, atom + (*table)(x));
  };
}

std::vector<double> empirical_moments(const EmpiricalSpectrum& spectrum, int K) {
  if (K < 0) throw DomainError("empirical_moments: K must be non-negative");
  std::vector<double> m(static_cast<std::size_t>(K) + 1, 0.0);
  for (double x : spectrum.values) {
    double p = 1.0;
    for (int j = 0; j <= K; ++j) {
      m[static_cast<std::size_t>(j)] += p;
      p *= x;
    }
  }
  for (double& v : m) v /= static_cast<double>(spectrum.values.size());
  return m;
}

}  // namespace freeconv::ensembles
