// polarspec: simulation, spectral estimation and Monte-Carlo studies for
// stationary bivariate signals, with CSV outputs and reproducible manifests.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polarspec/io.hpp"
#include "polarspec/mcstudy.hpp"
#include "polarspec/polar.hpp"
#include "polarspec/version.hpp"

namespace fs = std::filesystem;
using namespace polarspec;

namespace {

using Params = std::map<std::string, std::string>;

struct CommandResult {
  std::vector<std::string> outputs;
  std::vector<RunManifest::InputRecord> inputs;
};

std::string get(const Params& p, const std::string& key) {
  const auto it = p.find(key);
  if (it == p.end())
    throw std::invalid_argument("missing parameter '" + key + "'");
  return it->second;
}

double get_double(const Params& p, const std::string& key) {
  const std::string text = get(p, key);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw std::invalid_argument("parameter '" + key + "' is not a number: " + text);
  return v;
}

std::uint64_t get_uint(const Params& p, const std::string& key) {
  const std::string text = get(p, key);
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter '" + key +
                                "' is not a nonnegative integer: " + text);
  }
}

void reject_unknown_keys(const std::map<std::string, std::string>& kv,
                         const std::set<std::string>& allowed,
                         const std::string& file) {
  for (const auto& [key, value] : kv)
    if (!allowed.contains(key))
      throw std::invalid_argument(file + ": unknown key '" + key + "'");
}

// ---------------------------------------------------------------------------
// simulate: spec file -> signal CSV
// ---------------------------------------------------------------------------

CommandResult do_simulate(const Params& params) {
  const fs::path spec_path = get(params, "spec");
  const auto kv = read_key_value_file(spec_path);
  const std::string kind = require_string(kv, "kind");
  const auto n = static_cast<std::size_t>(get_uint(params, "n"));
  const std::uint64_t seed = get_uint(params, "seed");

  BivariateSignal signal;
  if (kind == "monochromatic") {
    reject_unknown_keys(kv, {"kind", "a", "theta", "chi", "nu0", "n", "seed"},
                        spec_path.string());
    MonochromaticSpec spec;
    spec.amplitude = require_double(kv, "a");
    spec.theta = require_double(kv, "theta");
    spec.chi = require_double(kv, "chi");
    spec.nu0 = require_double(kv, "nu0");
    signal = gen_monochromatic(spec, n);
  } else if (kind == "white_noise") {
    reject_unknown_keys(kv, {"kind", "s0", "phi", "theta", "n", "seed"},
                        spec_path.string());
    WhiteNoiseSpec spec;
    spec.s0 = require_double(kv, "s0");
    spec.phi = require_double(kv, "phi");
    spec.theta = require_double(kv, "theta");
    spec.seed = seed;
    signal = gen_white_noise(spec, n);
  } else {
    throw std::invalid_argument(spec_path.string() + ": unknown kind '" + kind +
                                "' (expected monochromatic or white_noise)");
  }

  const fs::path out = get(params, "out");
  write_signal_csv(out, signal);
  return {{out.string()}, {{spec_path.string(), fnv1a64_file(spec_path)}}};
}

// ---------------------------------------------------------------------------
// estimate: signal CSV -> spectrum CSV (+ optional Poincare CSV)
// ---------------------------------------------------------------------------

CommandResult do_estimate(const Params& params) {
  const fs::path in_path = get(params, "in");
  const BivariateSignal signal = read_signal_csv(in_path);
  const std::string method = get(params, "method");

  SpectralDensityEstimate est;
  if (method == "periodogram") {
    est = polarization_periodogram(signal);
  } else if (method == "multitaper") {
    const auto k = static_cast<std::size_t>(get_uint(params, "tapers"));
    const bool rectangular = get(params, "rectangular") == "1";
    const TaperSet tapers = rectangular
                                ? rectangular_taper(signal.size())
                                : slepian_tapers(signal.size(),
                                                 get_double(params, "nw"), k);
    if (rectangular && k != 1)
      throw std::invalid_argument("rectangular taper implies tapers = 1");
    est = multitaper_estimate(signal, tapers);
  } else {
    throw std::invalid_argument("unknown method '" + method +
                                "' (expected periodogram or multitaper)");
  }

  const bool full = get(params, "full_spectrum") == "1";
  const fs::path out = get(params, "out");
  write_spectrum_csv(out, spectrum_rows(est, full));
  CommandResult result{{out.string()},
                       {{in_path.string(), fnv1a64_file(in_path)}}};
  if (const auto it = params.find("poincare"); it != params.end() && !it->second.empty()) {
    write_poincare_csv(it->second, est, full);
    result.outputs.push_back(it->second);
  }
  return result;
}

// ---------------------------------------------------------------------------
// average: spectrum CSVs -> averaged spectrum CSV (Eq.-74 rule for phi)
// ---------------------------------------------------------------------------

CommandResult do_average(const Params& params) {
  std::vector<std::string> input_paths;
  for (std::size_t i = 0;; ++i) {
    const auto it = params.find("in." + std::to_string(i));
    if (it == params.end()) break;
    input_paths.push_back(it->second);
  }
  if (input_paths.empty())
    throw std::invalid_argument("average: no input spectra given");

  std::vector<SpectrumRow> acc;
  CommandResult result;
  for (const auto& path : input_paths) {
    const std::vector<SpectrumRow> rows = read_spectrum_csv(path);
    result.inputs.push_back({path, fnv1a64_file(path)});
    if (acc.empty()) {
      acc = rows;
      for (auto& row : acc) row.s1 = row.s2 = row.s3 = row.phi = std::nullopt;
      continue;
    }
    if (rows.size() != acc.size())
      throw std::invalid_argument("average: '" + path +
                                  "' has a different number of bins");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].nu != acc[r].nu)
        throw std::invalid_argument("average: '" + path +
                                    "' has a mismatched frequency grid");
      acc[r].S0 += rows[r].S0;
      acc[r].S1 += rows[r].S1;
      acc[r].S2 += rows[r].S2;
      acc[r].S3 += rows[r].S3;
    }
  }
  const double inv = 1.0 / static_cast<double>(input_paths.size());
  for (auto& row : acc) {
    row.S0 *= inv;
    row.S1 *= inv;
    row.S2 *= inv;
    row.S3 *= inv;
    // Normalized attributes re-derived from the summed components; per-file
    // phi columns are never averaged.
    const PolarizationAttributes attr =
        analyze_bin(stokes_to_quaternion({row.S0, row.S1, row.S2, row.S3}));
    row.s1 = attr.s1;
    row.s2 = attr.s2;
    row.s3 = attr.s3;
    row.phi = attr.phi;
  }
  const fs::path out = get(params, "out");
  write_spectrum_csv(out, acc);
  result.outputs.push_back(out.string());
  return result;
}

// ---------------------------------------------------------------------------
// bias-study: config file -> bias CSV
// ---------------------------------------------------------------------------

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find(',', begin), text.size());
    const std::string item = text.substr(begin, end - begin);
    char* stop = nullptr;
    const double v = std::strtod(item.c_str(), &stop);
    if (stop == item.c_str() || *stop != '\0')
      throw std::invalid_argument("key '" + key + "': bad list entry '" + item + "'");
    values.push_back(v);
    begin = end + 1;
    if (end == text.size()) break;
  }
  return values;
}

CommandResult do_bias_study(const Params& params) {
  const fs::path config_path = get(params, "config");
  const auto kv = read_key_value_file(config_path);
  reject_unknown_keys(kv, {"phi", "m", "n", "reps", "seed"}, config_path.string());

  BiasStudyConfig cfg;
  cfg.phi_grid = parse_double_list(require_string(kv, "phi"), "phi");
  cfg.m_values.clear();
  for (double m : parse_double_list(require_string(kv, "m"), "m")) {
    if (m < 1.0 || m != std::floor(m))
      throw std::invalid_argument("key 'm': entries must be positive integers");
    cfg.m_values.push_back(static_cast<int>(m));
  }
  if (kv.contains("n")) cfg.n = static_cast<std::size_t>(require_uint(kv, "n"));
  if (kv.contains("reps")) cfg.replicates = static_cast<int>(require_uint(kv, "reps"));
  if (kv.contains("seed")) cfg.seed = require_uint(kv, "seed");

  const int threads = static_cast<int>(get_uint(params, "threads"));
  const BiasTable table = run_bias_study(cfg, threads);
  const fs::path out = get(params, "out");
  write_bias_csv(out, table);
  return {{out.string()}, {{config_path.string(), fnv1a64_file(config_path)}}};
}

// ---------------------------------------------------------------------------
// section5: seeded validation experiment -> report CSV
// ---------------------------------------------------------------------------

CommandResult do_section5(const Params& params) {
  Section5Config cfg;
  cfg.seed = get_uint(params, "seed");
  cfg.realizations = static_cast<std::size_t>(get_uint(params, "m"));
  cfg.tapers = static_cast<std::size_t>(get_uint(params, "tapers"));
  cfg.nw = get_double(params, "nw");
  cfg.n = static_cast<std::size_t>(get_uint(params, "n"));
  cfg.threads = static_cast<int>(get_uint(params, "threads"));

  const Section5Report report = run_section5_experiment(cfg);
  const fs::path dir = get(params, "out_dir");
  fs::create_directories(dir);
  const fs::path out = dir / "section5_spectra.csv";
  write_section5_csv(out, report);

  const auto bin = report.tone_bin;
  const PolarizationAttributes attr = analyze_bin(report.periodogram_avg.bins[bin]);
  std::printf("tone bin %zu (nu0 = %s): periodogram s1 = %.4f  s2 = %.4f  s3 = %.4f  phi = %.4f\n",
              bin, format_double(report.tone.nu0).c_str(), attr.s1.value_or(0.0),
              attr.s2.value_or(0.0), attr.s3.value_or(0.0), attr.phi.value_or(0.0));
  return {{out.string()}, {}};
}

// ---------------------------------------------------------------------------
// dispatch + manifests
// ---------------------------------------------------------------------------

CommandResult dispatch(const std::string& command, const Params& params) {
  if (command == "simulate") return do_simulate(params);
  if (command == "estimate") return do_estimate(params);
  if (command == "average") return do_average(params);
  if (command == "bias-study") return do_bias_study(params);
  if (command == "section5") return do_section5(params);
  throw std::invalid_argument("unknown command '" + command + "'");
}

fs::path manifest_path_for(const std::string& command, const Params& params) {
  if (command == "section5")
    return fs::path(get(params, "out_dir")) / "manifest.json";
  return fs::path(get(params, "out").append(".manifest.json"));
}

int run_command(const std::string& command, const Params& params) {
  const auto start = std::chrono::steady_clock::now();
  const CommandResult result = dispatch(command, params);
  const auto stop = std::chrono::steady_clock::now();

  RunManifest manifest;
  manifest.command = command;
  manifest.version = kVersion;
  manifest.parameters = params;
  manifest.outputs = result.outputs;
  manifest.inputs = result.inputs;
  manifest.duration_seconds =
      std::chrono::duration<double>(stop - start).count();
  write_manifest(manifest_path_for(command, params), manifest);
  return 0;
}

int run_rerun(const fs::path& manifest_path, const std::string& out_dir) {
  const RunManifest manifest = read_manifest(manifest_path);
  for (const auto& input : manifest.inputs) {
    if (fnv1a64_file(input.path) != input.fnv1a64)
      throw std::invalid_argument("rerun: input '" + input.path +
                                  "' changed since the manifest was written");
  }
  Params params = manifest.parameters;
  if (!out_dir.empty()) {
    if (manifest.command == "section5") {
      params["out_dir"] = out_dir;
    } else {
      for (const char* key : {"out", "poincare"}) {
        const auto it = params.find(key);
        if (it != params.end() && !it->second.empty())
          it->second = (fs::path(out_dir) / fs::path(it->second).filename()).string();
      }
      fs::create_directories(out_dir);
    }
  }
  return run_command(manifest.command, params);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quaternion spectral analysis of stationary bivariate signals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Params params;
  std::string spec_file, out_file, in_file, method = "periodogram";
  std::string config_file, out_dir, poincare_file, manifest_file;
  std::vector<std::string> average_inputs;
  std::uint64_t n = 0, seed = 0, tapers = 5, m_realizations = 20, threads = 0;
  double nw = 4.0;
  bool rectangular = false, full_spectrum = false;

  auto* simulate = app.add_subcommand("simulate", "generate a signal from a spec file");
  simulate->add_option("--spec", spec_file, "flat key-value spec file")->required();
  simulate->add_option("--n", n, "sample count (overrides the spec file)");
  simulate->add_option("--seed", seed, "RNG seed (overrides the spec file)");
  simulate->add_option("--out", out_file, "output signal CSV")->required();

  auto* estimate = app.add_subcommand("estimate", "spectral density estimate of a signal CSV");
  estimate->add_option("--in", in_file, "input signal CSV")->required();
  estimate->add_option("--method", method, "periodogram | multitaper")
      ->check(CLI::IsMember({"periodogram", "multitaper"}));
  estimate->add_option("--tapers", tapers, "Slepian taper count K (default 5)");
  estimate->add_option("--nw", nw, "time-bandwidth product (default 4)");
  estimate->add_flag("--rectangular", rectangular,
                     "use the single rectangular taper (reduces to the periodogram)");
  estimate->add_flag("--full-spectrum", full_spectrum,
                     "emit all bins in signed-frequency order instead of 0..N/2");
  estimate->add_option("--poincare", poincare_file, "also write Poincare coordinates CSV");
  estimate->add_option("--out", out_file, "output spectrum CSV")->required();

  auto* average = app.add_subcommand("average", "average spectrum CSVs (phi re-derived from sums)");
  average->add_option("--out", out_file, "output spectrum CSV")->required();
  average->add_option("inputs", average_inputs, "input spectrum CSVs")->required();

  auto* bias = app.add_subcommand("bias-study", "degree-of-polarization bias table");
  bias->add_option("--config", config_file, "flat key-value config (phi, m, n, reps, seed)")->required();
  bias->add_option("--threads", threads, "worker threads (0 = all)");
  bias->add_option("--out", out_file, "output bias CSV")->required();

  auto* section5 = app.add_subcommand("section5", "tone-in-noise validation experiment");
  section5->add_option("--seed", seed, "master seed");
  section5->add_option("--m", m_realizations, "realization count (default 20)");
  section5->add_option("--tapers", tapers, "Slepian taper count (default 5)");
  section5->add_option("--nw", nw, "time-bandwidth product (default 4)");
  section5->add_option("--n", n, "signal length (default 1024)")->default_val(1024);
  section5->add_option("--threads", threads, "worker threads (0 = all)");
  section5->add_option("--out-dir", out_dir, "report directory")->required();

  auto* rerun = app.add_subcommand("rerun", "reproduce a previous run from its manifest");
  rerun->add_option("--manifest", manifest_file, "manifest JSON")->required();
  rerun->add_option("--out-dir", out_dir, "redirect outputs into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      const auto kv = read_key_value_file(spec_file);
      if (simulate->count("--n") == 0) {
        if (!kv.contains("n"))
          throw std::invalid_argument("missing 'n' (spec file key or --n flag)");
        n = require_uint(kv, "n");
      }
      if (simulate->count("--seed") == 0 && kv.contains("seed"))
        seed = require_uint(kv, "seed");
      params = {{"spec", spec_file}, {"n", std::to_string(n)},
                {"seed", std::to_string(seed)}, {"out", out_file}};
      return run_command("simulate", params);
    }
    if (estimate->parsed()) {
      params = {{"in", in_file}, {"method", method},
                {"tapers", std::to_string(tapers)}, {"nw", format_double(nw)},
                {"rectangular", rectangular ? "1" : "0"},
                {"full_spectrum", full_spectrum ? "1" : "0"},
                {"out", out_file}};
      if (!poincare_file.empty()) params["poincare"] = poincare_file;
      return run_command("estimate", params);
    }
    if (average->parsed()) {
      params = {{"out", out_file}};
      for (std::size_t i = 0; i < average_inputs.size(); ++i)
        params["in." + std::to_string(i)] = average_inputs[i];
      return run_command("average", params);
    }
    if (bias->parsed()) {
      params = {{"config", config_file}, {"threads", std::to_string(threads)},
                {"out", out_file}};
      return run_command("bias-study", params);
    }
    if (section5->parsed()) {
      params = {{"seed", std::to_string(seed)},
                {"m", std::to_string(m_realizations)},
                {"tapers", std::to_string(tapers)}, {"nw", format_double(nw)},
                {"n", std::to_string(n)}, {"threads", std::to_string(threads)},
                {"out_dir", out_dir}};
      return run_command("section5", params);
    }
    if (rerun->parsed()) return run_rerun(manifest_file, out_dir);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
