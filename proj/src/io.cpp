#include "polarspec/io.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polarspec/polar.hpp"
#include "polarspec/qft.hpp"

namespace polarspec {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path.string());
  return in;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path,
                    std::size_t line_no, const char* column) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw io_error(path.string() + ":" + std::to_string(line_no) +
                   ": non-numeric value '" + text + "' in column " + column);
  return value;
}

std::optional<double> parse_optional(const std::string& text,
                                     const std::filesystem::path& path,
                                     std::size_t line_no, const char* column) {
  if (text.empty()) return std::nullopt;
  return parse_double(text, path, line_no, column);
}

std::string opt_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, result.ptr};
}

void write_signal_csv(const std::filesystem::path& path, const BivariateSignal& x) {
  std::ofstream out = open_out(path);
  out << "t,u,v\n";
  for (std::size_t t = 0; t < x.size(); ++t)
    out << t << ',' << format_double(x.u(t)) << ',' << format_double(x.v(t)) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

BivariateSignal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != std::vector<std::string>{"t", "u", "v"})
    throw io_error(path.string() + ": expected header 't,u,v'");
  BivariateSignal x;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3)
      throw io_error(path.string() + ":" + std::to_string(line_no) +
                     ": expected 3 columns");
    parse_double(fields[0], path, line_no, "t");
    const double u = parse_double(fields[1], path, line_no, "u");
    const double v = parse_double(fields[2], path, line_no, "v");
    x.samples.emplace_back(u, v);
  }
  if (x.size() == 0) throw io_error(path.string() + ": no samples");
  return x;
}

std::vector<SpectrumRow> spectrum_rows(const SpectralDensityEstimate& est,
                                       bool full_spectrum) {
  const std::size_t n = est.size();
  std::vector<SpectrumRow> rows;
  const auto emit = [&](std::size_t bin, double nu) {
    const PolarizationAttributes attr = analyze_bin(est.bins[bin]);
    SpectrumRow row;
    row.nu = nu;
    row.S0 = attr.stokes.s0;
    row.S1 = attr.stokes.s1;
    row.S2 = attr.stokes.s2;
    row.S3 = attr.stokes.s3;
    row.s1 = attr.s1;
    row.s2 = attr.s2;
    row.s3 = attr.s3;
    row.phi = attr.phi;
    rows.push_back(row);
  };
  if (full_spectrum) {
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::ptrdiff_t ks = -half; ks < static_cast<std::ptrdiff_t>(n) - half; ++ks) {
      const std::size_t bin = static_cast<std::size_t>((ks + static_cast<std::ptrdiff_t>(n)) %
                                                       static_cast<std::ptrdiff_t>(n));
      emit(bin, static_cast<double>(ks) / static_cast<double>(n));
    }
  } else {
    for (std::size_t k = 0; k <= n / 2; ++k)
      emit(k, bin_frequency(k, n));
  }
  return rows;
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumRow>& rows) {
  std::ofstream out = open_out(path);
  out << "nu,S0,S1,S2,S3,s1,s2,s3,phi\n";
  for (const auto& r : rows) {
    out << format_double(r.nu) << ',' << format_double(r.S0) << ','
        << format_double(r.S1) << ',' << format_double(r.S2) << ','
        << format_double(r.S3) << ',' << opt_field(r.s1) << ','
        << opt_field(r.s2) << ',' << opt_field(r.s3) << ',' << opt_field(r.phi)
        << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

std::vector<SpectrumRow> read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) ||
      split_csv_line(line) !=
          std::vector<std::string>{"nu", "S0", "S1", "S2", "S3", "s1", "s2", "s3", "phi"})
    throw io_error(path.string() + ": expected spectrum CSV header");
  std::vector<SpectrumRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 9)
      throw io_error(path.string() + ":" + std::to_string(line_no) +
                     ": expected 9 columns");
    SpectrumRow row;
    row.nu = parse_double(fields[0], path, line_no, "nu");
    row.S0 = parse_double(fields[1], path, line_no, "S0");
    row.S1 = parse_double(fields[2], path, line_no, "S1");
    row.S2 = parse_double(fields[3], path, line_no, "S2");
    row.S3 = parse_double(fields[4], path, line_no, "S3");
    row.s1 = parse_optional(fields[5], path, line_no, "s1");
    row.s2 = parse_optional(fields[6], path, line_no, "s2");
    row.s3 = parse_optional(fields[7], path, line_no, "s3");
    row.phi = parse_optional(fields[8], path, line_no, "phi");
    rows.push_back(row);
  }
  if (rows.empty()) throw io_error(path.string() + ": no rows");
  return rows;
}

void write_poincare_csv(const std::filesystem::path& path,
                        const SpectralDensityEstimate& est, bool full_spectrum) {
  const std::vector<SpectrumRow> rows = spectrum_rows(est, full_spectrum);
  std::ofstream out = open_out(path);
  out << "nu,phi,two_theta,two_chi\n";
  const std::size_t n = est.size();
  const auto emit = [&](std::size_t bin, double nu) {
    const auto angles = poincare_angles(est.bins[bin]);
    const auto phi = degree_of_polarization(est.bins[bin]);
    out << format_double(nu) << ',' << opt_field(phi) << ',';
    if (angles)
      out << format_double(2.0 * angles->theta) << ','
          << format_double(2.0 * angles->chi);
    else
      out << ',';
    out << '\n';
  };
  if (full_spectrum) {
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::ptrdiff_t ks = -half; ks < static_cast<std::ptrdiff_t>(n) - half; ++ks) {
      const std::size_t bin = static_cast<std::size_t>((ks + static_cast<std::ptrdiff_t>(n)) %
                                                       static_cast<std::ptrdiff_t>(n));
      emit(bin, static_cast<double>(ks) / static_cast<double>(n));
    }
  } else {
    for (std::size_t k = 0; k <= n / 2; ++k) emit(k, bin_frequency(k, n));
  }
  if (!out) throw io_error("write failed: " + path.string());
}

void write_bias_csv(const std::filesystem::path& path, const BiasTable& table) {
  std::ofstream out = open_out(path);
  out << "phi_true,m,bias,stderr\n";
  for (const auto& cell : table.cells)
    out << format_double(cell.phi_true) << ',' << cell.m << ','
        << format_double(cell.bias) << ',' << format_double(cell.std_error) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

void write_section5_csv(const std::filesystem::path& path,
                        const Section5Report& report) {
  const std::size_t n = report.periodogram_avg.size();
  std::ofstream out = open_out(path);
  out << "nu";
  for (const char* group : {"theory", "periodogram", "multitaper"})
    out << ",S0_" << group << ",s1_" << group << ",s2_" << group << ",s3_"
        << group << ",phi_" << group;
  out << '\n';
  const auto emit_group = [&](const Quaternion& g) {
    const PolarizationAttributes attr = analyze_bin(g);
    out << ',' << format_double(attr.stokes.s0) << ',' << opt_field(attr.s1)
        << ',' << opt_field(attr.s2) << ',' << opt_field(attr.s3) << ','
        << opt_field(attr.phi);
  };
  for (std::size_t k = 0; k <= n / 2; ++k) {
    out << format_double(bin_frequency(k, n));
    emit_group(report.expected.density[k]);
    emit_group(report.periodogram_avg.bins[k]);
    emit_group(report.multitaper_avg.bins[k]);
    out << '\n';
  }
  if (!out) throw io_error("write failed: " + path.string());
}

std::map<std::string, std::string> read_key_value_file(
    const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected 'key = value'");
    kv[key] = value;
  }
  return kv;
}

std::string require_string(const std::map<std::string, std::string>& kv,
                           const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end())
    throw std::invalid_argument("missing required key '" + key + "'");
  return it->second;
}

double require_double(const std::map<std::string, std::string>& kv,
                      const std::string& key) {
  const std::string text = require_string(kv, key);
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument("key '" + key + "' is not a number: " + text);
  return value;
}

std::uint64_t require_uint(const std::map<std::string, std::string>& kv,
                           const std::string& key) {
  const std::string text = require_string(kv, key);
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key +
                                "' is not a nonnegative integer: " + text);
  }
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["version"] = manifest.version;
  j["parameters"] = manifest.parameters;
  j["outputs"] = manifest.outputs;
  j["inputs"] = nlohmann::json::array();
  for (const auto& input : manifest.inputs)
    j["inputs"].push_back({{"path", input.path}, {"fnv1a64", input.fnv1a64}});
  j["duration_seconds"] = manifest.duration_seconds;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw io_error("write failed: " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path.string() + ": invalid manifest JSON: " + e.what());
  }
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const auto& input : j.at("inputs"))
      m.inputs.push_back({input.at("path").get<std::string>(),
                          input.at("fnv1a64").get<std::string>()});
    m.duration_seconds = j.at("duration_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw io_error(path.string() + ": invalid manifest: " + e.what());
  }
  return m;
}

std::string fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char chunk[4096];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace polarspec
