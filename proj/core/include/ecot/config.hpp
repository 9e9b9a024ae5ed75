#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecot/reference.hpp"
#include "ecot/sinkhorn.hpp"

namespace ecot {

enum class RunMode { Causal, NonCausal, Both };

std::string to_string(RunMode m);
std::string to_string(Mode m);

struct OutputSpec {
  bool coupling = true;
  bool history = true;
  bool model = true;
  std::vector<double> taus{0.25};
  double symlog_linthresh = 1e-6;
};

/// Full experiment description. Seed-free: there is no randomness anywhere.
struct ExperimentConfig {
  int T = 1;
  MarginalSpec mu;
  MarginalSpec nu;
  std::variant<CoefficientSpec, StateSpaceSpec> reference;
  /// U-marginal used to assemble the reference coupling; defaults to mu.
  std::optional<MarginalSpec> reference_u_marginal;
  SinkhornSettings settings;
  RunMode run_mode = RunMode::Both;
  OutputSpec outputs;

  void validate() const;
  CoefficientSpec reference_coefficients() const;
};

/// Load and validate a JSON config; defaults filled, unknown keys rejected.
ExperimentConfig load_config(const std::string& path);

/// Bundled presets: "paper_fig1" (T=128 experiment), "trivial" (marginals
/// equal to the reference coupling's own), "smoke4" (T=4 quick run).
ExperimentConfig preset_config(const std::string& name);

bool is_preset_name(const std::string& name);

}  // namespace ecot
