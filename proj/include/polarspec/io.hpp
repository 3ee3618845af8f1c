#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polarspec/errors.hpp"
#include "polarspec/mcstudy.hpp"
#include "polarspec/signal.hpp"
#include "polarspec/specest.hpp"

namespace polarspec {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

// --- signal CSV: header "t,u,v", one row per sample ---
void write_signal_csv(const std::filesystem::path& path, const BivariateSignal& x);
BivariateSignal read_signal_csv(const std::filesystem::path& path);

// --- spectrum CSV: header "nu,S0,S1,S2,S3,s1,s2,s3,phi"; normalized columns
//     are blank where undefined ---
struct SpectrumRow {
  double nu{0.0};
  double S0{0.0}, S1{0.0}, S2{0.0}, S3{0.0};
  std::optional<double> s1, s2, s3, phi;
};

/// Rows for bins 0..N/2 (positive frequencies), or all bins in ascending
/// signed-frequency order when full_spectrum is set.
std::vector<SpectrumRow> spectrum_rows(const SpectralDensityEstimate& est,
                                       bool full_spectrum = false);
void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumRow>& rows);
std::vector<SpectrumRow> read_spectrum_csv(const std::filesystem::path& path);

// --- Poincare coordinates CSV: header "nu,phi,two_theta,two_chi" ---
void write_poincare_csv(const std::filesystem::path& path,
                        const SpectralDensityEstimate& est,
                        bool full_spectrum = false);

// --- bias table CSV: header "phi_true,m,bias,stderr" ---
void write_bias_csv(const std::filesystem::path& path, const BiasTable& table);

// --- section 5 report CSV: per-bin theoretical and estimated columns for the
//     periodogram and the multitaper estimator, positive frequencies ---
void write_section5_csv(const std::filesystem::path& path,
                        const Section5Report& report);

// --- flat key-value files: "key = value" lines, '#' comments ---
std::map<std::string, std::string> read_key_value_file(
    const std::filesystem::path& path);
double require_double(const std::map<std::string, std::string>& kv,
                      const std::string& key);
std::uint64_t require_uint(const std::map<std::string, std::string>& kv,
                           const std::string& key);
std::string require_string(const std::map<std::string, std::string>& kv,
                           const std::string& key);

// --- run manifests (JSON) ---
struct RunManifest {
  std::string command;
  std::string version;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> outputs;
  struct InputRecord {
    std::string path;
    std::string fnv1a64;  // hex content hash
  };
  std::vector<InputRecord> inputs;
  double duration_seconds{0.0};
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string fnv1a64_file(const std::filesystem::path& path);

}  // namespace polarspec
