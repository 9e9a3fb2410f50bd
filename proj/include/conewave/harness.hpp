#pragma once

// Experiment drivers. Each driver reads an ExperimentConfig (defaults merged
// with user JSON), checks the exponent guards before any computation, and
// returns rows of measurements plus log-log fits and a summary object.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "conewave/calculus.hpp"
#include "conewave/fit.hpp"

namespace conewave {

enum class Experiment {
  counterexample,
  smoothing_sweep,
  strichartz_ratio,
  sobolev_check,
  square_function,
  riesz_probe,
  nlw_run,
  euclid_oracle,
};

const char* to_string(Experiment e);
/// Accepts the enum names; "nlw" is an alias of nlw_run. ConfigError otherwise.
Experiment experiment_from_string(const std::string& name);
const std::vector<Experiment>& all_experiments();

struct ExperimentConfig {
  Experiment experiment = Experiment::euclid_oracle;
  nlohmann::json spectral = nlohmann::json::object();
  nlohmann::json grid = nlohmann::json::object();
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

/// The built-in configuration of each experiment.
ExperimentConfig default_config(Experiment e);

/// Defaults of `e` overridden key by key (recursively) by `j`. A "experiment"
/// key in `j`, if present, must name `e`.
ExperimentConfig config_from_json(Experiment e, const nlohmann::json& j);
ExperimentConfig load_config(Experiment e, const std::filesystem::path& file);

/// {"modes": [[nu, mult], ...], "n": n} or sphere parameters
/// {"n", "radius", "v0" | "nu0", "k_max"}.
SpectralData spectral_from_config(const nlohmann::json& j);

/// {"r_min", "r_max", "N"} or a lattice {"anchor", "per_octave" |
/// "per_decade", "r_lo", "r_hi"} whose nodes include anchor·2^k (·10^k).
GridPtr grid_from_config(const nlohmann::json& j, int n);

/// Exponent guards; throws GuardViolation or NotInExcludedRegion.
void check_guards(const ExperimentConfig& cfg);

struct ResultRow {
  std::string estimate;  // the inequality or identity the row probes
  std::string quantity;
  nlohmann::json params = nlohmann::json::object();
  double value = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::map<std::string, FitResult> fits;
  std::vector<nlohmann::json> grids;  // description and hash of each grid used
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> notes;
  Diagnostics diag;

  void add(std::string estimate, std::string quantity, nlohmann::json params,
           double value);
  void record_grid(const RadialGrid& g);
};

ExperimentReport run_counterexample(const ExperimentConfig& cfg);
ExperimentReport run_smoothing_sweep(const ExperimentConfig& cfg);
ExperimentReport run_strichartz_ratio(const ExperimentConfig& cfg);
ExperimentReport run_sobolev_check(const ExperimentConfig& cfg);
ExperimentReport run_square_function(const ExperimentConfig& cfg);
ExperimentReport run_riesz_probe(const ExperimentConfig& cfg);
ExperimentReport run_nlw(const ExperimentConfig& cfg);
ExperimentReport run_euclid_oracle(const ExperimentConfig& cfg);

/// Guards, then the matching driver.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace conewave
