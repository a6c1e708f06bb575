#pragma once

// JSON experiment configuration and report emission for the command-line tool.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flaglyap/basedyn.hpp"
#include "flaglyap/gaugediff.hpp"
#include "flaglyap/semigrp.hpp"
#include "flaglyap/spectra.hpp"

namespace flaglyap {

inline constexpr int kConfigSchema = 1;

/// Command-line overrides applied on top of the file contents.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out_dir;
};

struct ExperimentConfig {
  int dim = 0;
  int symplectic_n = 0;  // > 0 when the ambient is Sp(n) inside SL(2n)
  Cocycle cocycle;
  std::optional<SemigroupSpec> semigroup;  // set when generators come from a sampler
  std::vector<WeightVector> weights;
  GaugeDirection gauge;
  SectionOptions section;
  std::optional<ThetaSet> section_theta;  // explicit flag type for `section`
  double theta_eps = 0.0;
  std::vector<double> fd_steps{1e-4};
  std::vector<double> scan_grid;
  int finite_horizon = 0;
  GapCheckOptions gap_check;
  std::filesystem::path out_dir = "out";
  nlohmann::json resolved;  // full resolved configuration, embedded in reports
};

struct VerifyConfig {
  std::map<std::string, double> thresholds;
  std::vector<std::string> only;
  std::uint64_t seed = 20240501;
  std::filesystem::path out_dir = "out";
  nlohmann::json resolved;
};

/// Parses and validates a configuration. Throws ValidationError whose message
/// names the offending JSON path (and line, for syntax errors).
ExperimentConfig parse_config(const nlohmann::json& j, const ConfigOverrides& overrides = {});
ExperimentConfig load_config_file(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

/// Only the schema, verify and output sections are read.
VerifyConfig parse_verify_config(const nlohmann::json& j, const ConfigOverrides& overrides = {});
/// Throws ValidationError with file:line on syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

nlohmann::json to_json(const CartanVector& h);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const ThetaSet& t);
nlohmann::json to_json(const SpectrumReport& r, const BaseSystem& base);
nlohmann::json to_json(const GapReport& r);

/// RFC 4180 CSV: x, nu, H_1..H_d, gap_1..gap_{d-1} (gaps of H+(x)).
std::string spectrum_csv(const SpectrumReport& r, const BaseSystem& base);
/// omega, t, value, gap_1..gap_{d-1}.
std::string scan_csv(const std::vector<std::vector<ScanRow>>& scans);

/// Writes text exactly as given (binary mode) creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);
/// Pretty JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace flaglyap
