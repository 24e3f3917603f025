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

#include "freeconv/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "freeconv/closedform.hpp"
#include "freeconv/ensembles.hpp"
#include "freeconv/errors.hpp"
#include "freeconv/isotropic.hpp"
#include "freeconv/log.hpp"
#include "freeconv/measure_parser.hpp"
#include "freeconv/measures.hpp"
#include "freeconv/moments.hpp"
#include "freeconv/resolvent.hpp"

namespace freeconv::cli {
namespace {

using json = nlohmann::json;
using measures::MeasureSpec;

// A usage problem detected after CLI11 has accepted the arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A measure string that failed to parse, kept for the caret diagnostic.
struct MeasureSyntaxError {
  std::string text;
  ParseError error;
};

struct Common {
  std::string format = "csv";
  std::string out_path;
};

struct Options {
  Common common;
  std::string measure;
  int points = 512;
  double eps1 = 1e-6, eps2 = 1e-7;
  double edge_margin = 0.01;
  std::vector<double> xs;
  int order = 8;
  bool cumulants = false;
  // Ensemble.
  int N = 256;
  std::string ratios = "1";
  int k = 0;
  int samples = 40;
  std::uint64_t seed = 1;
  int bins = 0;
  std::string ks;
  std::string simulate;
};

MeasureSpec parse_spec(const std::string& text) {
  try {
    return measures::parse_measure(text);
  } catch (const ParseError& e) {
    throw MeasureSyntaxError{text, e};
  }
}

int thread_count() {
  const char* env = std::getenv("FREECONV_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  int n = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, n);
  if (ec != std::errc() || ptr != end || n < 1 || n > 1024)
    throw UsageError(std::string("FREECONV_THREADS must be an integer in [1, 1024], got '") + env + "'");
  return n;
}

std::vector<Rational> parse_ratios(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(measures::parse_rational(item));
    } catch (const ParseError& e) {
      throw MeasureSyntaxError{item, e};
    }
  }
  if (out.empty()) throw UsageError("--ratios needs at least one value");
  return out;
}

resolvent::DensityOptions density_options(const Options& o) {
  resolvent::DensityOptions d;
  d.eps1 = o.eps1;
  d.eps2 = o.eps2;
  return d;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty() || c.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw Error("cannot open output file '" + c.out_path + "'");
  f << text;
  if (!f) throw Error("failed writing output file '" + c.out_path + "'");
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + '\n';
}

std::string fmt(double x) { return format_double(x); }

std::string dump(const json& j) { return j.dump(2) + '\n'; }

json support_json(const resolvent::Support& s) {
  return {{"lo", s.lo}, {"hi", s.hi}, {"lo_power", s.lo_power}, {"hi_power", s.hi_power}};
}

// ---- density ---------------------------------------------------------------

std::string cmd_density(const Options& o) {
  const MeasureSpec spec = parse_spec(o.measure);
  const auto poly = measures::build_resolvent(spec);
  std::vector<double> xs, rho;
  json meta = {{"measure", spec.to_string()}, {"resolvent", poly.to_string()}};
  if (!o.xs.empty()) {
    xs = o.xs;
    resolvent::BranchTracker tracker(poly);
    for (double x : xs) rho.push_back(resolvent::density_eval(tracker, x, density_options(o)).rho);
  } else {
    resolvent::CurveOptions co;
    co.n_points = o.points;
    co.edge_margin = o.edge_margin;
    co.threads = thread_count();
    co.density = density_options(o);
    const auto curve = resolvent::density_curve(poly, co);
    for (const auto& p : curve.points) {
      xs.push_back(p.x);
      rho.push_back(p.rho);
    }
    meta["support"] = support_json(curve.support);
    meta["atom"] = curve.atom_at_zero;
    meta["continuous_mass"] = curve.continuous_mass;
  }
  if (o.common.format == "json") {
    meta["x"] = xs;
    meta["rho"] = rho;
    return dump(meta);
  }
  std::string s = csv_row({"x", "rho"});
  for (std::size_t i = 0; i < xs.size(); ++i) s += csv_row({fmt(xs[i]), fmt(rho[i])});
  return s;
}

// ---- support ---------------------------------------------------------------

std::string cmd_support(const Options& o) {
  const MeasureSpec spec = parse_spec(o.measure);
  const auto poly = measures::build_resolvent(spec);
  resolvent::CurveOptions co;
  co.threads = thread_count();
  const auto curve = resolvent::density_curve(poly, co);
  const auto& sup = curve.support;
  const double atom = curve.atom_at_zero;
  if (o.common.format == "json") {
    json j = {{"measure", spec.to_string()}, {"support", support_json(sup)}, {"atom", atom}};
    return dump(j);
  }
  return csv_row({"lo", "hi", "atom"}) + csv_row({fmt(sup.lo), fmt(sup.hi), fmt(atom)});
}

// ---- moments ---------------------------------------------------------------

std::string cmd_moments(const Options& o) {
  if (o.order < 1) throw UsageError("-K must be at least 1");
  const MeasureSpec spec = parse_spec(o.measure);
  const auto poly = measures::build_resolvent(spec);
  const auto m = moments::moments_from_resolvent(poly, o.order);
  std::optional<moments::CumulantSequence> kap;
  if (o.cumulants) kap = moments::cumulants_from_moments(m);
  if (o.common.format == "json") {
    json j = {{"measure", spec.to_string()}, {"K", o.order}};
    std::vector<std::string> ms;
    for (const auto& v : m.values) ms.push_back(v.get_str());
    j["moments"] = ms;
    if (kap) {
      std::vector<std::string> ks;
      for (const auto& v : kap->values) ks.push_back(v.get_str());
      j["cumulants"] = ks;
    }
    return dump(j);
  }
  std::string s = kap ? csv_row({"n", "moment", "moment_decimal", "cumulant"})
                      : csv_row({"n", "moment", "moment_decimal"});
  for (std::size_t n = 0; n < m.size(); ++n) {
    const std::string idx = std::to_string(n);
    if (kap) {
      const std::string kc = n == 0 ? "" : kap->kappa(n).get_str();
      s += csv_row({idx, m[n].get_str(), fmt(m[n].get_d()), kc});
    } else {
      s += csv_row({idx, m[n].get_str(), fmt(m[n].get_d())});
    }
  }
  return s;
}

// ---- simulate --------------------------------------------------------------

ensembles::EnsembleConfig config_from(const Options& o) {
  ensembles::EnsembleConfig cfg;
  cfg.N = o.N;
  cfg.ginibre_shape_ratios = parse_ratios(o.ratios);
  cfg.unitary_sum_k = o.k;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

json config_json(const ensembles::EnsembleConfig& cfg) {
  std::vector<std::string> r;
  for (const auto& c : cfg.ginibre_shape_ratios) r.push_back(c.get_str());
  return {{"N", cfg.N},           {"ratios", r},
          {"unitary_sum_k", cfg.unitary_sum_k}, {"samples", cfg.samples},
          {"seed", cfg.seed},     {"rng", ensembles::Rng::algorithm}};
}

std::optional<MeasureSpec> ks_model(const std::string& ks, const ensembles::EnsembleConfig& cfg) {
  if (ks.empty()) return std::nullopt;
  if (ks == "model") {
    auto spec = ensembles::model_spec(cfg);
    if (!spec) throw DomainError("no model law for unitary_sum_k > 2; pass --ks <measure>");
    return spec;
  }
  return parse_spec(ks);
}

std::string cmd_simulate(const Options& o) {
  const auto cfg = config_from(o);
  const auto spectrum = ensembles::simulate(cfg, thread_count());
  const auto model = ks_model(o.ks, cfg);
  std::optional<double> ks;
  if (model) ks = ensembles::ks_distance(spectrum, ensembles::model_cdf(*model));
  const int bins = o.bins > 0 ? o.bins : (o.common.format == "csv" ? 64 : 0);
  if (o.common.format == "json") {
    json j = {{"config", config_json(cfg)}, {"atom_fraction", spectrum.atom_fraction()},
              {"zero_count", spectrum.zero_count}};
    if (bins > 0) {
      json h = json::array();
      for (const auto& b : ensembles::histogram(spectrum, bins)) h.push_back({b.lo, b.hi, b.density});
      j["histogram"] = h;
    } else {
      j["eigenvalues"] = spectrum.values;
    }
    if (ks) {
      j["ks"] = {{"model", model->to_string()}, {"distance", *ks}};
    }
    return dump(j);
  }
  std::string s = csv_row({"bin_lo", "bin_hi", "density"});
  for (const auto& b : ensembles::histogram(spectrum, bins)) s += csv_row({fmt(b.lo), fmt(b.hi), fmt(b.density)});
  return s;
}

// ---- compare ---------------------------------------------------------------

// Ginibre/unitary construction whose limiting law is `spec`.
ensembles::EnsembleConfig ensemble_for(const MeasureSpec& spec) {
  ensembles::EnsembleConfig cfg;
  cfg.ginibre_shape_ratios.clear();
  for (const auto& f : spec.factors()) {
    const bool integral = f.exponent.get_den() == 1 && sgn(f.exponent) > 0;
    if (const auto* m = std::get_if<measures::MpFactor>(&f.kind); m && integral) {
      for (long i = 0; i < f.exponent.get_num().get_si(); ++i) cfg.ginibre_shape_ratios.push_back(m->c);
    } else if (std::holds_alternative<measures::AsFactor>(f.kind) && f.exponent == 1) {
      cfg.unitary_sum_k = 2;
    } else {
      throw DomainError("measure '" + spec.to_string() +
                        "' has no Ginibre/unitary ensemble (needs mp(c)^n factors and at most one 'as')");
    }
  }
  return cfg;
}

void apply_simulate_overrides(ensembles::EnsembleConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--simulate expects key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw UsageError("--simulate: '" + key + "' needs a non-negative integer, got '" + val + "'");
    if (key == "N") {
      cfg.N = static_cast<int>(std::min<std::uint64_t>(v, 1u << 20));
    } else if (key == "samples") {
      cfg.samples = static_cast<int>(std::min<std::uint64_t>(v, 1u << 20));
    } else if (key == "seed") {
      cfg.seed = v;
    } else {
      throw UsageError("--simulate: unknown key '" + key + "' (expected N, samples, seed)");
    }
  }
}

std::string cmd_compare(const Options& o) {
  const MeasureSpec spec = parse_spec(o.measure);
  const auto poly = measures::build_resolvent(spec);
  resolvent::CurveOptions co;
  co.n_points = o.points;
  co.edge_margin = o.edge_margin;
  co.threads = thread_count();
  co.density = density_options(o);
  const auto curve = resolvent::density_curve(poly, co);

  json r = {{"measure", spec.to_string()},
            {"resolvent", poly.to_string()},
            {"support", support_json(curve.support)},
            {"atom", curve.atom_at_zero},
            {"continuous_mass", curve.continuous_mass}};

  // Exact moments against quadrature of the inverted density.
  const int K = 6;
  const auto exact = moments::moments_from_resolvent(poly, K);
  const auto numeric = moments::moments_from_density(curve, K);
  double moment_err = 0.0;
  for (int n = 1; n <= K; ++n)
    moment_err = std::max(moment_err, std::abs(numeric[n] - exact[n].get_d()) / std::abs(exact[n].get_d()));
  r["mean"] = numeric[1];
  r["moments_max_rel_error"] = moment_err;

  if (const auto fam = closedform::parse_family(o.measure)) {
    double peak = 0.0, worst = 0.0;
    for (const auto& p : curve.points) peak = std::max(peak, p.rho);
    for (const auto& p : curve.points) worst = std::max(worst, std::abs(p.rho - closedform::eval(*fam, p.x)));
    r["closed_form"] = closedform::name(*fam);
    r["closed_form_max_rel_error"] = peak > 0.0 ? worst / peak : worst;
  } else {
    r["closed_form"] = nullptr;
  }

  if (!o.simulate.empty()) {
    auto cfg = ensemble_for(spec);
    apply_simulate_overrides(cfg, o.simulate);
    cfg.validate();
    const auto spectrum = ensembles::simulate(cfg, thread_count());
    const double ks = ensembles::ks_distance(spectrum, ensembles::model_cdf(spec));
    const auto em = ensembles::empirical_moments(spectrum, 2);
    r["simulation"] = {{"config", config_json(cfg)},
                       {"ks", ks},
                       {"atom_fraction", spectrum.atom_fraction()},
                       {"m1", em[1]},
                       {"m2", em[2]},
                       {"m2_exact", exact[2].get_d()}};
  }

  if (o.common.format == "json") return dump(r);
  std::string s = csv_row({"quantity", "value"});
  auto add = [&](const std::string& k, const json& v) {
    s += csv_row({k, v.is_number_float() ? fmt(v.get<double>()) : (v.is_string() ? v.get<std::string>() : v.dump())});
  };
  add("measure", r["measure"]);
  add("support_lo", r["support"]["lo"]);
  add("support_hi", r["support"]["hi"]);
  add("atom", r["atom"]);
  add("continuous_mass", r["continuous_mass"]);
  add("mean", r["mean"]);
  add("moments_max_rel_error", r["moments_max_rel_error"]);
  add("closed_form", r["closed_form"].is_null() ? json("none") : r["closed_form"]);
  if (r.contains("closed_form_max_rel_error")) add("closed_form_max_rel_error", r["closed_form_max_rel_error"]);
  if (r.contains("simulation")) {
    const auto& sim = r["simulation"];
    add("sim_N", sim["config"]["N"]);
    add("sim_samples", sim["config"]["samples"]);
    add("sim_seed", sim["config"]["seed"]);
    add("ks", sim["ks"]);
    add("sim_atom_fraction", sim["atom_fraction"]);
    add("sim_m1", sim["m1"]);
    add("sim_m2", sim["m2"]);
    add("m2_exact", sim["m2_exact"]);
  }
  return s;
}

// ---- ring ------------------------------------------------------------------

std::string cmd_ring(const Options& o) {
  if (o.points < 2) throw UsageError("--points must be at least 2");
  const MeasureSpec spec = parse_spec(o.measure);
  const auto prof = isotropic::radial_profile(spec, o.points);
  if (o.common.format == "json") {
    json j = {{"measure", spec.to_string()},
              {"inner_radius", prof.inner_radius},
              {"outer_radius", prof.outer_radius},
              {"r", prof.r},
              {"F", prof.F}};
    return dump(j);
  }
  std::string s = csv_row({"r", "F"});
  for (std::size_t i = 0; i < prof.r.size(); ++i) s += csv_row({fmt(prof.r[i]), fmt(prof.F[i])});
  return s;
}

// ---- potential -------------------------------------------------------------

std::string cmd_potential(const Options& o) {
  const MeasureSpec spec = parse_spec(o.measure);
  const auto poly = measures::build_resolvent(spec);
  const auto sup = resolvent::support_edges(poly);
  std::vector<double> xs = o.xs;
  if (xs.empty()) {
    resolvent::CurveOptions co;
    co.n_points = o.points;
    co.edge_margin = o.edge_margin;
    co.density = density_options(o);
    co.threads = thread_count();
    for (const auto& p : resolvent::density_curve(poly, sup, co).points) xs.push_back(p.x);
  }
  std::vector<double> dv;
  for (double x : xs) dv.push_back(resolvent::potential_derivative(poly, sup, x, density_options(o)));
  if (o.common.format == "json") {
    json j = {{"measure", spec.to_string()}, {"support", support_json(sup)}, {"x", xs}, {"dV", dv}};
    return dump(j);
  }
  std::string s = csv_row({"x", "dV"});
  for (std::size_t i = 0; i < xs.size(); ++i) s += csv_row({fmt(xs[i]), fmt(dv[i])});
  return s;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
}

void add_measure(CLI::App* sub, Options& o) {
  sub->add_option("-m,--measure", o.measure, "Measure spec, e.g. \"as*mp(1)^2\", or alias (fc2, bures, ...)")
      ->required();
}

void add_density_knobs(CLI::App* sub, Options& o) {
  sub->add_option("--points", o.points, "Number of grid points")->check(CLI::Range(2, 1 << 20));
  sub->add_option("--eps1", o.eps1, "First Richardson offset")->check(CLI::PositiveNumber);
  sub->add_option("--eps2", o.eps2, "Second Richardson offset")->check(CLI::PositiveNumber);
  sub->add_option("--edge-margin", o.edge_margin, "Relative distance kept from support edges")
      ->check(CLI::Range(0.0, 0.49));
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"freeconv: spectral densities of free multiplicative convolutions"};
  app.name("freeconv");
  app.require_subcommand(1, 1);
  Options o;

  auto* density = app.add_subcommand("density", "Density by Stieltjes inversion of the resolvent");
  add_measure(density, o);
  add_density_knobs(density, o);
  density->add_option("--x", o.xs, "Evaluate at these points instead of a grid")->delimiter(',');
  add_common(density, o.common);

  auto* support = app.add_subcommand("support", "Support edges and atom at zero");
  add_measure(support, o);
  add_common(support, o.common);

  auto* mom = app.add_subcommand("moments", "Exact moments as fractions");
  add_measure(mom, o);
  mom->add_option("-K,--order", o.order, "Highest moment order")->check(CLI::Range(1, 4096));
  mom->add_flag("--cumulants", o.cumulants, "Also print free cumulants");
  add_common(mom, o.common);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo spectrum of X X^dagger");
  sim->add_option("--N", o.N, "Matrix dimension")->check(CLI::Range(2, 1 << 14));
  sim->add_option("--ratios", o.ratios, "Comma-separated MP parameters c_i, one per Ginibre factor");
  sim->add_option("-k,--unitaries", o.k, "Number of Haar unitaries summed in front")->check(CLI::Range(0, 64));
  sim->add_option("--samples", o.samples, "Number of samples")->check(CLI::Range(1, 1 << 20));
  sim->add_option("--seed", o.seed, "RNG seed");
  sim->add_option("--bins", o.bins, "Histogram bins (0: raw eigenvalues in JSON, 64 for CSV)")
      ->check(CLI::Range(0, 1 << 20));
  sim->add_option("--ks", o.ks, "KS distance against 'model' or a measure spec");
  add_common(sim, o.common);

  auto* cmp = app.add_subcommand("compare", "Cross-check inversion, closed form, moments and simulation");
  add_measure(cmp, o);
  add_density_knobs(cmp, o);
  cmp->add_option("--simulate", o.simulate, "Monte Carlo check, e.g. N=256,samples=40,seed=7");
  add_common(cmp, o.common);

  auto* ring = app.add_subcommand("ring", "Radial eigenvalue CDF of the isotropic matrix");
  add_measure(ring, o);
  ring->add_option("--points", o.points, "Number of radii")->check(CLI::Range(2, 1 << 20));
  add_common(ring, o.common);

  auto* pot = app.add_subcommand("potential", "Derivative of the potential, 2 Re G(x + i0)");
  add_measure(pot, o);
  add_density_knobs(pot, o);
  pot->add_option("--x", o.xs, "Evaluate at these points instead of a grid")->delimiter(',');
  add_common(pot, o.common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  // Grid defaults differ per subcommand.
  if (ring->parsed() && ring->count("--points") == 0) o.points = 64;
  if (cmp->parsed() && cmp->count("--points") == 0) o.points = 200;

  std::string sub = "freeconv";
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });
  auto flush_warnings = [&] {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    set_warning_sink({});
  };
  try {
    std::string text;
    if (density->parsed()) {
      sub = "density";
      text = cmd_density(o);
    } else if (support->parsed()) {
      sub = "support";
      text = cmd_support(o);
    } else if (mom->parsed()) {
      sub = "moments";
      text = cmd_moments(o);
    } else if (sim->parsed()) {
      sub = "simulate";
      text = cmd_simulate(o);
    } else if (cmp->parsed()) {
      sub = "compare";
      text = cmd_compare(o);
    } else if (ring->parsed()) {
      sub = "ring";
      text = cmd_ring(o);
    } else {
      sub = "potential";
      text = cmd_potential(o);
    }
    emit(o.common, text, out);
  } catch (const MeasureSyntaxError& e) {
    flush_warnings();
    err << "freeconv " << sub << ": invalid measure\n" << measures::format_parse_error(e.text, e.error) << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    flush_warnings();
    err << "freeconv " << sub << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    flush_warnings();
    err << "freeconv " << sub << ": ";
    if (!o.measure.empty() && sub != "simulate") err << "measure '" << o.measure << "': ";
    err << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    flush_warnings();
    err << "freeconv " << sub << ": unexpected failure: " << e.what() << '\n';
    return kExitDomain;
  }
  flush_warnings();
  return kExitOk;
}

}  // namespace freeconv::cli
