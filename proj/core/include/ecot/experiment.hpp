#pragma once

#include <string>
#include <vector>

#include "ecot/config.hpp"
#include "ecot/identification.hpp"
#include "ecot/sinkhorn.hpp"

namespace ecot {

struct ModeReport {
  Mode mode = Mode::Causal;
  bool converged = false;
  int sweeps = 0;
  double final_distance = 0.0;
  CausalityReport causality;
  double runtime_seconds = 0.0;
  std::vector<std::string> artifacts;
};

struct ExperimentReport {
  std::vector<ModeReport> modes;
  /// 0 when every requested run converged, 2 otherwise.
  int exit_code = 0;
};

/// Run the configured experiment and write the artifact files into out_dir
/// (created if missing): coupling_{mode}.csv, history_{mode}.csv,
/// model_{mode}.json, crosscov_{mode}_tau{t}.csv (+ .symlog.csv), report.json.
ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& out_dir);

struct FileDiff {
  std::string name;
  double max_abs = 0.0;
  bool pass = false;
};

struct DiffReport {
  std::vector<FileDiff> files;
  double max_abs = 0.0;
  bool pass = false;
};

/// Max-abs elementwise difference between two numeric CSV files, or between
/// all matching CSV files of two directories. Throws ShapeMismatch when
/// shapes (or file sets) differ.
DiffReport diff_artifacts(const std::string& path_a, const std::string& path_b, double tol);

}  // namespace ecot
