#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace epilim {

/// One CLI invocation. Zero / empty fields fall back to family defaults.
struct ExperimentConfig {
  std::string command;  // conjugate, moreau, gamma-check, dual-check, attouch-check, witness, reproduce, list
  std::string family;
  std::string target;   // reproduce: example id
  std::string grid;     // "lo:hi:count"
  int horizon = 0;
  int tail_start = 0;
  /// Added to the truncation allowance spacing + 2 / tail_start.
  std::optional<double> tol;
  std::string format;   // csv | json; empty picks the command default
  std::string out;      // output directory; empty writes the main artifact to stdout
  double lambda = 1.0;
  double x_star = 0.5;
  int member = 0;       // conjugate / moreau: family index (default horizon)
};

/// Applies `key = value` lines (# comments, blank lines ignored) on top of
/// `base`. Keys mirror the long CLI flags. Throws ErrorCode::Usage on
/// unknown keys or malformed values.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

struct ExperimentResult {
  /// 0 pass, 2 verdict failure, 3 hypothesis failure, 1 usage error.
  int exit_code = 0;
  std::string output;  // main artifact (stdout when no --out directory)
  std::string error;
};

/// Runs one command. Artifacts go to cfg.out when set: verdict.json plus
/// per-grid curves in the chosen format.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Registry table (or JSON array when format is json), sorted by name.
std::string list_families(const std::string& format = "");

/// Side-by-side claimed and computed objects for a worked example
/// ("blowup" or "nested-intervals").
ExperimentResult reproduce(const std::string& id, const ExperimentConfig& cfg = {});

}  // namespace epilim
