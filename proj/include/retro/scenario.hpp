#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "retro/fields.hpp"
#include "retro/genfun.hpp"
#include "retro/inversion.hpp"
#include "retro/media.hpp"

namespace retro {

inline constexpr const char* kVersion = "1.0.0";

enum class ProblemKind { heat, fractal, wave, dirichlet };

struct GridSpec {
  double xmin = -8.0;
  double xmax = 8.0;
  int n = 2048;
};

struct ScenarioConfig {
  nlohmann::json raw;

  std::vector<double> breakpoints;
  std::vector<double> speeds{1.0};
  std::vector<Coupling> couplings;

  ProblemKind kind = ProblemKind::heat;
  double alpha = 1.0;
  double tau = 0.1;
  double depth = 1.0;
  int steps = 400;

  /// Named family and its parameters, or generalized Hermite coefficients.
  std::string family = "gaussian";
  nlohmann::json family_params = nlohmann::json::object();
  std::vector<double> hermite_coeffs;

  GridSpec grid;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;

  std::string method = "series";
  int order = 24;
  double cutoff = 12.0;
  CoeffMethod coeff_method = CoeffMethod::polyfit;
  double fit_window = 3.0;

  /// Primary metric window |x - center| <= half_width (infinite by default)
  /// and the interior window (half the grid span by default).
  double metric_half_width = std::numeric_limits<double>::infinity();
  double interior_half_width = 0.0;

  double diag_epsilon = 1e-3;
  std::vector<double> diag_points;
  double diag_time = 0.1;

  std::string result_file = "result.csv";
  std::string report_file = "report.json";
  std::string basis_file = "basis.csv";
  std::string input_file;

  LayeredMedium medium() const;
  EvolutionKernel kernel() const;
};

/// Throws Error(config_error) for malformed or inconsistent input.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

struct MetricSet {
  double rel_l2 = 0.0;
  double max_abs = 0.0;
};

struct RunReport {
  std::string command;
  std::optional<MetricSet> metrics;
  std::optional<MetricSet> interior;
  nlohmann::json diagnostics = nlohmann::json::object();
  nlohmann::json timings = nlohmann::json::object();
  std::vector<std::string> warnings;
  nlohmann::json config;

  nlohmann::json to_json() const;
};

/// One row per sample of the observed grid; NaN marks a missing column.
struct ResultTable {
  std::vector<double> x, f_true, f_rec, u_tau;
};

struct ScenarioOutput {
  RunReport report;
  ResultTable table;
};

ScenarioOutput run_forward(const ScenarioConfig& config);
ScenarioOutput run_invert(const ScenarioConfig& config, const SampledField& observed);
ScenarioOutput run_roundtrip(const ScenarioConfig& config);
RunReport run_diagnose(const ScenarioConfig& config);

/// Reads a uniform grid from a CSV with an `x` column and a `u_tau` or
/// `value` column.
SampledField read_field_csv(const std::filesystem::path& path);

void write_result_csv(const std::filesystem::path& path, const ResultTable& table);
void write_report(const std::filesystem::path& path, const RunReport& report);
/// `layer,j,power,coeff` rows of H_jn (and of x_n^k into `monomial_path`).
void write_basis_csv(const std::filesystem::path& path, const std::filesystem::path& monomial_path,
                     const GenHermiteBasis& basis);

}  // namespace retro
