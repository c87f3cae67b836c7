/**
 * Copyright 2026 The thermsub Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include "thermsub/errors.hpp"
#include "thermsub/expsim.hpp"
#include "thermsub/homodyne.hpp"
#include "thermsub/inference.hpp"
#include "thermsub/io.hpp"
#include "thermsub/photon_stats.hpp"
#include "thermsub/urn.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace thermsub::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Fig. 2 panels: (M, mu0) at k = 3.
struct Panel {
  const char* tag;
  int M;
  double mu0;
};
constexpr std::array<Panel, 3> kFig2Panels{{{"a", 1, 0.675}, {"b", 2, 0.644}, {"c", 3, 0.645}}};
constexpr int kFig2K = 3;
constexpr double kHistogramBinWidth = 0.25;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string str(double v) { return format_double(v); }
std::string str(unsigned v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(std::uint64_t v) { return std::to_string(v); }

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return fs::path(dir) / p;
  }
  return p;
}

fs::path default_out_dir() {
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return dir;
  return ".";
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

// Data file plus a <file>.manifest.json sidecar carrying the timestamp.
void write_with_manifest(const fs::path& path, const std::string& text, RunManifest manifest) {
  write_text(path, text);
  manifest.timestamp = iso8601_now();
  write_text(path.string() + ".manifest.json", manifest.to_json(true).dump(2) + "\n");
}

struct Sink {
  std::string out_path;
  std::string format = "csv";
};

void add_sink(CLI::App* cmd, Sink& sink, bool csv_allowed = true) {
  if (csv_allowed) {
    cmd->add_option("--format", sink.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  } else {
    sink.format = "json";
    cmd->add_option("--format", sink.format, "json")->check(CLI::IsMember({"json"}));
  }
  cmd->add_option("--out", sink.out_path, "output file (stdout when omitted)");
}

void deliver(const Sink& sink, const std::string& text, const RunManifest& manifest,
             std::ostream& out) {
  if (sink.out_path.empty()) {
    out << text;
    return;
  }
  const fs::path path = resolve_out(sink.out_path);
  write_with_manifest(path, text, manifest);
  out << path.string() << "\n";
}

std::string csv_header(const RunManifest& manifest) {
  std::string s;
  for (const auto& line : manifest.comment_lines()) s += line + "\n";
  return s;
}

Json json_head(const RunManifest& manifest) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["manifest"] = manifest.to_json(false);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json moments_json(const Moments& m) {
  Json j;
  j["mean"] = number(m.mean);
  j["second_factorial"] = number(m.second_factorial);
  j["g2"] = number(m.g2);
  j["variance"] = number(m.variance);
  return j;
}

std::string moments_comment(const char* label, const Moments& m) {
  return std::string("# ") + label + " mean=" + str(m.mean) +
         ",second_factorial=" + str(m.second_factorial) + ",g2=" + str(m.g2) +
         ",variance=" + str(m.variance) + "\n";
}

// ---- pmf ------------------------------------------------------------------

struct PmfOptions {
  int k = 0;
  double m = 1.0;
  double M = 1.0;
  double mu0 = 1.0;
  double tail_eps = kDefaultTailEps;
  Sink sink;
};

void cmd_pmf(const PmfOptions& o, std::ostream& out) {
  const SubtractedThermalParams p{o.M, o.m, o.k, o.mu0};
  p.validate();
  const Pmf pmf = build_pmf(p, o.tail_eps);
  const Moments closed = moments(p);
  const Moments table = pmf_moments(pmf);

  RunManifest manifest;
  manifest.command = "pmf";
  manifest.parameters = {{"k", str(o.k)},      {"m", str(o.m)},
                         {"M", str(o.M)},      {"mu0", str(o.mu0)},
                         {"tail-eps", str(o.tail_eps)}, {"format", o.sink.format}};

  std::string text;
  if (o.sink.format == "json") {
    Json j = json_head(manifest);
    j["params"] = {{"M", o.M}, {"m", o.m}, {"k", o.k}, {"mu0", o.mu0}};
    j["n_max"] = pmf.n_max();
    j["tail_bound"] = pmf.tail_bound;
    j["moments"] = moments_json(closed);
    j["pmf_moments"] = moments_json(table);
    j["probabilities"] = pmf.probabilities;
    text = dump(j);
  } else {
    text = csv_header(manifest);
    text += "# n_max=" + str(pmf.n_max()) + ",tail_bound=" + str(pmf.tail_bound) + "\n";
    text += moments_comment("moments", closed);
    text += moments_comment("pmf_moments", table);
    text += "n,p\n";
    for (std::size_t n = 0; n < pmf.size(); ++n)
      text += std::to_string(n) + "," + str(pmf.probabilities[n]) + "\n";
  }
  deliver(o.sink, text, manifest, out);
}

// ---- polya ----------------------------------------------------------------

struct PolyaOptions {
  int k = 0;
  double m = 1.0;
  double M = 1.0;
  bool exact = false;
  Sink sink;
};

bool is_integral(double v) { return std::floor(v) == v && std::abs(v) < 1e9; }

void cmd_polya(const PolyaOptions& o, std::ostream& out) {
  const PolyaParams p{o.k, o.m, o.M};
  p.validate();
  std::vector<std::string> exact_values;
  if (o.exact) {
    detail::require(is_integral(o.m) && is_integral(o.M),
                    "--exact needs integer m and M");
    const int m = static_cast<int>(o.m), M = static_cast<int>(o.M);
    for (int j = 0; j <= o.k; ++j) {
      const Rational q = m == M ? make_rational(j == o.k ? 1 : 0) : polya_pmf_integer(j, o.k, m, M);
      exact_values.push_back(to_fraction_string(q));
    }
  }
  std::vector<double> probs;
  for (int j = 0; j <= o.k; ++j) probs.push_back(polya_pmf(j, p));
  const Moments mom = polya_moments(p);

  RunManifest manifest;
  manifest.command = "polya";
  manifest.parameters = {{"k", str(o.k)}, {"m", str(o.m)}, {"M", str(o.M)},
                         {"exact", o.exact ? "true" : "false"}, {"format", o.sink.format}};

  std::string text;
  if (o.sink.format == "json") {
    Json j = json_head(manifest);
    j["params"] = {{"k", o.k}, {"m", o.m}, {"M", o.M}};
    j["exact"] = o.exact;
    j["moments"] = moments_json(mom);
    if (o.exact)
      j["probabilities"] = exact_values;
    else
      j["probabilities"] = probs;
    text = dump(j);
  } else {
    text = csv_header(manifest) + moments_comment("moments", mom) + "j,p\n";
    for (int j = 0; j <= o.k; ++j)
      text += std::to_string(j) + "," + (o.exact ? exact_values[j] : str(probs[j])) + "\n";
  }
  deliver(o.sink, text, manifest, out);
}

// ---- urn ------------------------------------------------------------------

struct UrnOptions {
  std::string scheme;
  int k = 0;
  int m = 1;
  int M = 1;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 0;
  Sink sink;
};

void cmd_urn(const UrnOptions& o, unsigned threads, std::ostream& out) {
  const UrnScheme scheme = parse_urn_scheme(o.scheme);
  const UrnTrialResult sim = urn_simulate(scheme, o.k, o.m, o.M, o.trials, o.seed, threads);
  std::vector<double> exact;
  if (o.k <= kUrnEnumerationMaxDraws) {
    for (const auto& q : urn_enumerate_exact(scheme, o.k, o.m, o.M)) exact.push_back(to_double(q));
  } else {
    const PolyaParams p{o.k, double(o.m), double(o.M)};
    for (int j = 0; j <= o.k; ++j) exact.push_back(sibling_pmf(scheme, j, p));
  }

  const double trials = static_cast<double>(o.trials);
  std::vector<double> freq, se, z;
  double max_abs_z = 0.0;
  bool within = true;
  for (int j = 0; j <= o.k; ++j) {
    const double f = sim.frequency(j);
    const double s = std::sqrt(exact[j] * (1.0 - exact[j]) / trials);
    const double zj = s > 0.0 ? (f - exact[j]) / s : (f == exact[j] ? 0.0 : INFINITY);
    freq.push_back(f);
    se.push_back(s);
    z.push_back(zj);
    max_abs_z = std::max(max_abs_z, std::abs(zj));
    within = within && std::abs(zj) < 4.0;
  }

  RunManifest manifest;
  manifest.command = "urn";
  manifest.seed = o.seed;
  manifest.parameters = {{"scheme", to_string(scheme)}, {"k", str(o.k)},
                         {"m", str(o.m)},              {"M", str(o.M)},
                         {"trials", str(o.trials)},    {"seed", str(o.seed)},
                         {"threads", str(threads)},    {"format", o.sink.format}};

  std::string text;
  if (o.sink.format == "json") {
    Json j = json_head(manifest);
    j["scheme"] = to_string(scheme);
    j["trials"] = o.trials;
    j["counts"] = sim.counts;
    j["frequencies"] = freq;
    j["exact"] = exact;
    j["std_errors"] = se;
    Json zs = Json::array();
    for (double v : z) zs.push_back(number(v));
    j["z_scores"] = zs;
    j["max_abs_z"] = number(max_abs_z);
    j["within_4_sigma"] = within;
    j["empirical_mean"] = sim.empirical_mean();
    j["empirical_g2"] = number(sim.empirical_g2());
    text = dump(j);
  } else {
    text = csv_header(manifest);
    text += "# max_abs_z=" + str(max_abs_z) + ",within_4_sigma=" + (within ? "true" : "false") +
            ",empirical_mean=" + str(sim.empirical_mean()) +
            ",empirical_g2=" + str(sim.empirical_g2()) + "\n";
    text += "j,count,frequency,exact,std_error,z\n";
    for (int j = 0; j <= o.k; ++j)
      text += std::to_string(j) + "," + std::to_string(sim.counts[j]) + "," + str(freq[j]) + "," +
              str(exact[j]) + "," + str(se[j]) + "," + str(z[j]) + "\n";
  }
  deliver(o.sink, text, manifest, out);
}

// ---- quadrature -----------------------------------------------------------

struct QuadratureOptions {
  int k = 0;
  double m = 1.0;
  double M = 1.0;
  double mu0 = 1.0;
  double grid_step = 0.01;
  std::optional<double> xmax;
  double tail_eps = kDefaultTailEps;
  Sink sink;
};

struct Grid {
  std::vector<double> x, density;
  double trapezoid_mass = 0.0;
};

// Symmetric grid i * step, |i| <= ceil(xmax / step).
Grid density_grid(const QuadratureModel& model, double step, double xmax) {
  detail::require(step > 0.0 && step <= 1.0, "grid step must lie in (0, 1]");
  detail::require(xmax > 0.0, "xmax must be positive");
  const long half = static_cast<long>(std::ceil(xmax / step - 1e-9));
  detail::require<ResourceError>(half <= 5000000, "grid too fine for the requested range");
  Grid g;
  g.x.reserve(2 * half + 1);
  g.density.reserve(2 * half + 1);
  for (long i = -half; i <= half; ++i) {
    const double x = static_cast<double>(i) * step;
    g.x.push_back(x);
    g.density.push_back(i <= 0 ? model.density(x) : g.density[half - i]);
  }
  for (std::size_t i = 1; i < g.x.size(); ++i)
    g.trapezoid_mass += 0.5 * step * (g.density[i] + g.density[i - 1]);
  return g;
}

void cmd_quadrature(const QuadratureOptions& o, std::ostream& out) {
  const SubtractedThermalParams p{o.M, o.m, o.k, o.mu0};
  p.validate();
  const QuadratureModel model = make_quadrature_model(p, o.tail_eps);
  const double xmax = o.xmax.value_or(model.x_max());
  const Grid g = density_grid(model, o.grid_step, xmax);

  RunManifest manifest;
  manifest.command = "quadrature";
  manifest.parameters = {{"k", str(o.k)},     {"m", str(o.m)},
                         {"M", str(o.M)},     {"mu0", str(o.mu0)},
                         {"grid-step", str(o.grid_step)}, {"xmax", str(xmax)},
                         {"tail-eps", str(o.tail_eps)},   {"format", o.sink.format}};

  std::string text;
  if (o.sink.format == "json") {
    Json j = json_head(manifest);
    j["convention"] = std::string(QuadratureModel::convention);
    j["params"] = {{"M", o.M}, {"m", o.m}, {"k", o.k}, {"mu0", o.mu0}};
    j["n_max"] = model.n_max();
    j["trapezoid_mass"] = g.trapezoid_mass;
    j["x"] = g.x;
    j["density"] = g.density;
    text = dump(j);
  } else {
    text = csv_header(manifest);
    text += "# convention=" + std::string(QuadratureModel::convention) +
            ",n_max=" + str(model.n_max()) + ",trapezoid_mass=" + str(g.trapezoid_mass) + "\n";
    text += "x,density\n";
    for (std::size_t i = 0; i < g.x.size(); ++i) text += str(g.x[i]) + "," + str(g.density[i]) + "\n";
  }
  deliver(o.sink, text, manifest, out);
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  ExperimentConfig config;
  std::string mode = "idealized";
  Sink sink;
};

RunManifest simulate_manifest(const ExperimentConfig& c, const std::string& format) {
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.seed = c.seed;
  manifest.parameters = {{"M", str(c.M)},         {"k", str(c.k)},
                         {"mu0", str(c.mu0)},     {"r", str(c.r)},
                         {"groups", str(c.groups)}, {"mode", to_string(c.mode)},
                         {"seed", str(c.seed)},   {"threads", str(c.workers)},
                         {"format", format}};
  return manifest;
}

void cmd_simulate(SimulateOptions o, unsigned threads, std::ostream& out) {
  o.config.mode = parse_conditioning_mode(o.mode);
  o.config.workers = threads;
  const ConditionalSampleSet set = simulate_conditional(o.config);
  const RunManifest manifest = simulate_manifest(o.config, o.sink.format);

  std::string text;
  if (o.sink.format == "json") {
    Json j = json_head(manifest);
    const Json body = to_json(set);
    for (const auto& [key, value] : body.items())
      if (key != "schema_version") j[key] = value;
    text = dump(j);
  } else {
    std::ostringstream s;
    write_samples_csv(s, set, manifest);
    text = s.str();
  }
  deliver(o.sink, text, manifest, out);
}

// ---- fit ------------------------------------------------------------------

struct FitCmdOptions {
  std::string samples;
  int k = 0;
  double m = 1.0;
  double M = 1.0;
  std::optional<double> truth_mu0;
  FitOptions fit;
  Sink sink;
};

void cmd_fit(const FitCmdOptions& o, std::ostream& out) {
  SubtractedThermalParams{o.M, o.m, o.k, 1.0}.validate();
  const std::vector<double> xs = read_samples_csv(o.samples);
  const FitResult fit = fit_mu0(xs, o.k, o.m, o.M, o.fit);

  RunManifest manifest;
  manifest.command = "fit";
  manifest.parameters = {{"samples", o.samples}, {"k", str(o.k)}, {"m", str(o.m)},
                         {"M", str(o.M)},        {"lower", str(o.fit.lower)},
                         {"upper", str(o.fit.upper)}};
  if (o.truth_mu0) manifest.parameters.emplace_back("truth-mu0", str(*o.truth_mu0));

  Json j = json_head(manifest);
  j["fit"] = to_json(fit);
  const SubtractedThermalParams fitted{o.M, o.m, o.k, fit.mu0_hat};
  if (xs.size() >= kMinChi2Samples)
    j["chi2"] = to_json(chi2_adequacy(xs, make_quadrature_model(fitted), true));
  else
    j["chi2"] = nullptr;
  if (o.truth_mu0) {
    const SubtractedThermalParams truth{o.M, o.m, o.k, *o.truth_mu0};
    truth.validate();
    j["truth_mu0"] = *o.truth_mu0;
    j["fidelity"] = fidelity_diagonal(DiagonalState{build_pmf(truth, 1e-14)},
                                      DiagonalState{build_pmf(fitted, 1e-14)});
  } else {
    j["truth_mu0"] = nullptr;
    j["fidelity"] = nullptr;
  }
  deliver(o.sink, dump(j), manifest, out);
}

// ---- figures --------------------------------------------------------------

struct FiguresOptions {
  int which = 2;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  std::optional<double> mu0;
};

std::vector<std::string> figure2(const FiguresOptions& o, const fs::path& dir, unsigned threads) {
  std::vector<std::string> files;
  for (const Panel& panel : kFig2Panels) {
    const SubtractedThermalParams p{double(panel.M), 1.0, kFig2K, panel.mu0};
    const QuadratureModel model = make_quadrature_model(p);
    const std::string stem = std::string("fig2") + panel.tag;

    RunManifest curve_manifest;
    curve_manifest.command = "figures";
    curve_manifest.parameters = {{"which", "2"},           {"panel", panel.tag},
                                 {"M", str(panel.M)},      {"k", str(kFig2K)},
                                 {"mu0", str(panel.mu0)},  {"series", "model"}};
    const Grid g = density_grid(model, 0.01, model.x_max());
    std::string curve = csv_header(curve_manifest) + "x,density\n";
    for (std::size_t i = 0; i < g.x.size(); ++i) curve += str(g.x[i]) + "," + str(g.density[i]) + "\n";
    const fs::path curve_path = dir / (stem + "_curve.csv");
    write_with_manifest(curve_path, curve, curve_manifest);
    files.push_back(curve_path.string());

    ExperimentConfig c;
    c.M = panel.M;
    c.k = kFig2K;
    c.mu0 = panel.mu0;
    c.groups = o.samples;
    c.seed = o.seed;
    c.workers = threads;
    const ConditionalSampleSet set = simulate_conditional(c);

    RunManifest hist_manifest = simulate_manifest(c, "csv");
    hist_manifest.command = "figures";
    hist_manifest.parameters.insert(hist_manifest.parameters.begin(),
                                    {{"which", "2"}, {"panel", panel.tag}});
    std::string hist = csv_header(hist_manifest);
    if (set.accepted >= kMinFitSamples) {
      const FitResult fit = fit_mu0(set.quadratures, kFig2K, 1.0, panel.M);
      hist += "# fit mu0_hat=" + str(fit.mu0_hat) + ",std_error=" + str(fit.std_error) +
              ",converged=" + (fit.converged ? "true" : "false") + "\n";
      if (set.accepted >= kMinChi2Samples) {
        const auto chi2 = chi2_adequacy(
            set.quadratures, make_quadrature_model({double(panel.M), 1.0, kFig2K, fit.mu0_hat}), true);
        hist += "# chi2 statistic=" + str(chi2.statistic) + ",dof=" + str(chi2.dof) +
                ",p_value=" + str(chi2.p_value) + "\n";
      }
    }
    const QuadratureCdf cdf(model);
    const long half = static_cast<long>(std::ceil(model.x_max() / kHistogramBinWidth));
    std::vector<std::uint64_t> counts(2 * half, 0);
    for (double x : set.quadratures) {
      const long b = static_cast<long>(std::floor(x / kHistogramBinWidth)) + half;
      if (b >= 0 && b < 2 * half) ++counts[b];
    }
    hist += "bin_left,bin_right,count,empirical_density,model_density\n";
    const double n = static_cast<double>(std::max<std::uint64_t>(set.accepted, 1));
    for (long b = 0; b < 2 * half; ++b) {
      const double lo = static_cast<double>(b - half) * kHistogramBinWidth;
      const double hi = lo + kHistogramBinWidth;
      hist += str(lo) + "," + str(hi) + "," + std::to_string(counts[b]) + "," +
              str(static_cast<double>(counts[b]) / (n * kHistogramBinWidth)) + "," +
              str((cdf(hi) - cdf(lo)) / kHistogramBinWidth) + "\n";
    }
    const fs::path hist_path = dir / (stem + "_histogram.csv");
    write_with_manifest(hist_path, hist, hist_manifest);
    files.push_back(hist_path.string());
  }
  return files;
}

std::vector<std::string> figure3(const FiguresOptions& o, const fs::path& dir) {
  RunManifest manifest;
  manifest.command = "figures";
  manifest.parameters = {{"which", "3"}, {"mu0", o.mu0 ? str(*o.mu0) : "per-M"}};
  std::string text = csv_header(manifest) + "M,k,mu0,mu,pmf_mean\n";
  const std::vector<int> ks{0, 1, 2, 3, 4, 5};
  for (const Panel& panel : kFig2Panels) {
    const std::vector<int> Ms{panel.M};
    for (const auto& row : mean_photon_report(Ms, ks, o.mu0.value_or(panel.mu0)))
      text += str(row.M) + "," + str(row.k) + "," + str(row.mu0) + "," + str(row.mu) + "," +
              str(row.pmf_mean) + "\n";
  }
  const fs::path path = dir / "fig3_mean_photon.csv";
  write_with_manifest(path, text, manifest);
  return {path.string()};
}

void cmd_figures(const FiguresOptions& o, unsigned threads, std::ostream& out) {
  const fs::path dir = o.out_dir.empty() ? default_out_dir() : resolve_out(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
  if (o.mu0) detail::require(*o.mu0 > 0.0, "mu0 must be positive");
  const auto files = o.which == 2 ? figure2(o, dir, threads) : figure3(o, dir);

  RunManifest manifest;
  manifest.command = "figures";
  manifest.seed = o.seed;
  manifest.parameters = {{"which", str(o.which)}, {"samples", str(o.samples)}, {"seed", str(o.seed)}};
  Json j = json_head(manifest);
  j["files"] = files;
  out << dump(j);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-subtracted multimode thermal light: statistics, urns, homodyne "
               "simulation and fitting",
               "thermsub-cli"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads (part of the reproducibility key)")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  PmfOptions pmf;
  auto* c_pmf = app.add_subcommand("pmf", "photon-number distribution and moments");
  c_pmf->add_option("--k", pmf.k, "subtracted photons")->required();
  c_pmf->add_option("--m", pmf.m, "registered modes")->capture_default_str();
  c_pmf->add_option("--M", pmf.M, "prepared modes")->required();
  c_pmf->add_option("--mu0", pmf.mu0, "mean photons per mode")->required();
  c_pmf->add_option("--tail-eps", pmf.tail_eps, "omitted-mass bound")->capture_default_str();
  add_sink(c_pmf, pmf.sink);

  PolyaOptions polya;
  auto* c_polya = app.add_subcommand("polya", "Polya urn distribution and moments");
  c_polya->add_option("--k", polya.k, "draws")->required();
  c_polya->add_option("--m", polya.m, "red balls")->required();
  c_polya->add_option("--M", polya.M, "all balls")->required();
  c_polya->add_flag("--exact", polya.exact, "emit exact rationals p/q");
  add_sink(c_polya, polya.sink);

  UrnOptions urn;
  auto* c_urn = app.add_subcommand("urn", "urn Monte Carlo against the exact law");
  c_urn->add_option("--scheme", urn.scheme, "with_return|without_return|return_with_addition")
      ->required();
  c_urn->add_option("--k", urn.k, "draws")->required();
  c_urn->add_option("--m", urn.m, "red balls")->required();
  c_urn->add_option("--M", urn.M, "all balls")->required();
  c_urn->add_option("--trials", urn.trials)->capture_default_str();
  c_urn->add_option("--seed", urn.seed)->capture_default_str();
  add_sink(c_urn, urn.sink);

  QuadratureOptions quad;
  auto* c_quad = app.add_subcommand("quadrature", "quadrature density table");
  c_quad->add_option("--k", quad.k)->required();
  c_quad->add_option("--m", quad.m)->capture_default_str();
  c_quad->add_option("--M", quad.M)->required();
  c_quad->add_option("--mu0", quad.mu0)->required();
  c_quad->add_option("--grid-step", quad.grid_step)->capture_default_str();
  c_quad->add_option("--xmax", quad.xmax, "half-width (default sqrt(2 n_max) + 6)");
  c_quad->add_option("--tail-eps", quad.tail_eps)->capture_default_str();
  add_sink(c_quad, quad.sink);

  SimulateOptions sim;
  auto* c_sim = app.add_subcommand("simulate", "conditional-preparation Monte Carlo");
  c_sim->add_option("--M", sim.config.M)->required();
  c_sim->add_option("--k", sim.config.k)->required();
  c_sim->add_option("--mu0", sim.config.mu0)->required();
  c_sim->add_option("--r", sim.config.r, "tap reflectivity")->capture_default_str();
  c_sim->add_option("--groups", sim.config.groups)->required();
  c_sim->add_option("--mode", sim.mode, "physical|idealized")->capture_default_str();
  c_sim->add_option("--seed", sim.config.seed)->capture_default_str();
  add_sink(c_sim, sim.sink);

  FitCmdOptions fit;
  auto* c_fit = app.add_subcommand("fit", "maximum-likelihood fit of mu0 from samples");
  c_fit->add_option("--samples", fit.samples, "CSV of quadratures")->required();
  c_fit->add_option("--k", fit.k)->required();
  c_fit->add_option("--m", fit.m)->capture_default_str();
  c_fit->add_option("--M", fit.M)->required();
  c_fit->add_option("--truth-mu0", fit.truth_mu0, "report fidelity against this state");
  c_fit->add_option("--lower", fit.fit.lower)->capture_default_str();
  c_fit->add_option("--upper", fit.fit.upper)->capture_default_str();
  add_sink(c_fit, fit.sink, false);

  FiguresOptions fig;
  auto* c_fig = app.add_subcommand("figures", "data files for Figs. 2 and 3");
  c_fig->add_option("--which", fig.which)->required()->check(CLI::IsMember({2, 3}));
  c_fig->add_option("--out-dir", fig.out_dir, "default: $THERMSUB_OUT_DIR or .");
  c_fig->add_option("--seed", fig.seed)->capture_default_str();
  c_fig->add_option("--samples", fig.samples, "groups per Fig. 2 panel")->capture_default_str();
  c_fig->add_option("--mu0", fig.mu0, "Fig. 3 mu0 for every M (default: per-panel values)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (c_pmf->parsed()) cmd_pmf(pmf, out);
    else if (c_polya->parsed()) cmd_polya(polya, out);
    else if (c_urn->parsed()) cmd_urn(urn, threads, out);
    else if (c_quad->parsed()) cmd_quadrature(quad, out);
    else if (c_sim->parsed()) cmd_simulate(sim, threads, out);
    else if (c_fit->parsed()) cmd_fit(fit, out);
    else if (c_fig->parsed()) cmd_figures(fig, threads, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

} // namespace thermsub::cli
