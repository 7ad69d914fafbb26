#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lemni/critpoints.hpp"
#include "lemni/stats.hpp"

namespace lemni {

enum class Command { Simulate, Raster, Constants, Area, Heavytail, Kacrice, Scaling };

/// All run parameters. Values come from defaults, then a key=value file,
/// then command-line flags (later sources win). Keys match field names.
struct ExperimentConfig {
  Command command = Command::Simulate;
  std::int64_t n = 100;
  std::int64_t trials = 1000;
  std::uint64_t master_seed = 42;
  double kappa = 2.0;
  int threads = 0;  ///< 0 = hardware concurrency
  // raster
  int resolution = 1024;
  double bound = 1.25;
  // kacrice
  std::string mode = "on-event";
  double eps = 1e-3;
  int grid = 2048;
  // heavytail
  double r = 0.9;
  double a = 100.0;
  double b = 110.0;
  // area
  bool q1 = false;
  double c_n = 0.0;
  // simulate / scaling
  std::int64_t area_samples = 4096;
  int boundary_points = 0;  ///< 0 = max(1024, 4n)
  std::vector<std::int64_t> n_list{100, 200, 400, 800};
  bool no_timing = false;
  bool dump_crit = false;
  std::string out_path;
};

/// Defaults with per-command adjustments (heavytail n = 200; kacrice n = 6,
/// kappa = 1; larger trial counts for the Monte Carlo commands).
ExperimentConfig default_config(Command command);

const char* to_string(Command c);
Command parse_command(const std::string& name);  ///< accepts "area-predict" for Area

/// Parses "key = value" lines; blank lines and '#' comments are skipped.
/// Throws ConfigError on a malformed line.
std::map<std::string, std::string> parse_config_text(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Applies settings in key order, validating each value. Unknown keys and
/// out-of-range values throw ConfigError.
void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);

/// Checks cross-field constraints for cfg.command; throws ConfigError.
void validate(const ExperimentConfig& cfg);

int effective_threads(int requested);

inline constexpr const char* kTrialCsvHeader =
    "trial,n,components,components_annulus,n_crit_outside,area_outside_est,max_residual,"
    "inradius_ok,wall_micros";

struct TrialRecord {
  std::int64_t trial_index = 0;
  std::int64_t n = 0;
  int components = 1;
  int components_annulus = 1;
  int n_crit_outside = 0;
  double area_outside_est = 0.0;
  double max_residual = 0.0;
  bool inradius_ok = false;
  std::int64_t wall_micros = 0;
  // diagnostics, not in the CSV
  bool failed = false;
  SolverStatus status = SolverStatus::Converged;
  int restarts = 0;
  int n_ambiguous = 0;
};

/// One trial of the simulate pipeline: roots from lane Roots of
/// derive_substream(seed, trial), solver perturbations from lane Solver,
/// area samples from lane Area. `crit_out`, if given, receives the critical set.
TrialRecord run_trial(const ExperimentConfig& cfg, std::int64_t trial_index,
                      CriticalSet* crit_out = nullptr);

std::string format_trial_row(const TrialRecord& rec);

struct SimulateResult {
  std::vector<TrialRecord> records;  ///< sorted by trial_index
  SummaryAccumulator components;     ///< successful trials only
  SummaryAccumulator components_annulus;
  SummaryAccumulator area_sqrt_n;    ///< sqrt(n) * area_outside_est
  SummaryAccumulator inradius;
  std::int64_t failures = 0;

  double failure_fraction() const;
  bool failure_threshold_exceeded() const { return failure_fraction() > 1e-3; }
};

/// Runs cfg.trials trials of size cfg.n on effective_threads(cfg.threads)
/// workers. Records land in trial order and summaries are merged over
/// fixed blocks of trial indices in order, so the result does not depend on
/// the thread count.
SimulateResult run_simulate(const ExperimentConfig& cfg);

void write_trial_csv(std::ostream& out, const SimulateResult& res);
void write_failures(std::ostream& out, const SimulateResult& res);
void write_summary(std::ostream& out, const ExperimentConfig& cfg, const SimulateResult& res);

struct ScalingRow {
  std::int64_t n = 0;
  Estimate mean;          ///< mean components
  Estimate per_sqrt_n;    ///< mean / sqrt(n)
  std::int64_t failures = 0;
  bool in_bracket = true; ///< per_sqrt_n in [0.2, 1.0] (checked for n >= 100)
};

/// run_simulate for each n in cfg.n_list (same seed, area sampling off).
std::vector<ScalingRow> run_scaling(const ExperimentConfig& cfg);
void write_scaling(std::ostream& out, const std::vector<ScalingRow>& rows);

/// Command drivers used by the CLI. Each returns a process exit code
/// (0 ok, 3 numeric failure threshold) and writes human-readable output to `out`.
int command_simulate(const ExperimentConfig& cfg, std::ostream& out);
int command_scaling(const ExperimentConfig& cfg, std::ostream& out);
int command_raster(const ExperimentConfig& cfg, std::ostream& out);
int command_constants(std::ostream& out);
int command_area(const ExperimentConfig& cfg, std::ostream& out);
int command_heavytail(const ExperimentConfig& cfg, std::ostream& out);
int command_kacrice(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace lemni
