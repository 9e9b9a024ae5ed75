#include "ecot/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "ecot/errors.hpp"
#include "ecot/io.hpp"

namespace ecot {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string tau_tag(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", tau);
  return std::string(buf);
}

json model_to_json(const CoefficientSpec& spec) {
  json steps = json::array();
  for (const auto& s : spec.steps) {
    json step;
    step["h"] = std::vector<double>(s.h.data(), s.h.data() + s.h.size());
    step["f"] = std::vector<double>(s.f.data(), s.f.data() + s.f.size());
    step["b"] = s.b;
    step["eps"] = s.eps;
    steps.push_back(std::move(step));
  }
  return steps;
}

ModeReport run_mode(const ExperimentConfig& config, Mode mode, const GaussianJoint& gamma,
                    const GaussianJoint& mu, const GaussianJoint& nu, const fs::path& out) {
  const auto start = std::chrono::steady_clock::now();

  SinkhornSettings settings = config.settings;
  settings.mode = mode;
  const SinkhornResult result = run(gamma, mu, nu, settings);
  const std::string tag = to_string(mode);

  ModeReport report;
  report.mode = mode;
  report.converged = result.converged;
  report.sweeps = result.sweeps;
  report.final_distance = result.history.empty() ? 0.0 : result.history.back().distance;
  report.causality = check_causality(result.coupling, settings.tol);

  if (config.outputs.coupling) {
    const std::string f = (out / ("coupling_" + tag + ".csv")).string();
    write_coupling_csv(f, result.coupling);
    report.artifacts.push_back(f);
  }
  if (config.outputs.history) {
    const std::string f = (out / ("history_" + tag + ".csv")).string();
    std::ofstream hist(f);
    hist << "sweep,distance,kl_to_reference\n";
    for (const auto& rec : result.history)
      hist << rec.sweep << ',' << format_double(rec.distance) << ','
           << format_double(rec.kl_to_reference) << '\n';
    report.artifacts.push_back(f);
  }
  if (config.outputs.model) {
    const std::string f = (out / ("model_" + tag + ".json")).string();
    json doc;
    doc["steps"] = model_to_json(extract_model(result.coupling));
    std::ofstream mf(f);
    mf << doc.dump(2) << '\n';
    report.artifacts.push_back(f);
  }
  for (double tau : config.outputs.taus) {
    const Eigen::MatrixXd cc = conditional_cross_covariance(result.coupling, tau);
    const std::string raw = (out / ("crosscov_" + tag + "_tau" + tau_tag(tau) + ".csv")).string();
    const std::string sym =
        (out / ("crosscov_" + tag + "_tau" + tau_tag(tau) + ".symlog.csv")).string();
    write_matrix_csv(raw, cc);
    write_matrix_csv(sym, symlog_transform(cc, config.outputs.symlog_linthresh));
    report.artifacts.push_back(raw);
    report.artifacts.push_back(sym);
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  const fs::path out(out_dir);
  fs::create_directories(out);

  const GaussianJoint mu = realize_marginal(config.mu, Role::Input);
  const GaussianJoint nu = realize_marginal(config.nu, Role::Output);
  const GaussianJoint ref_u = config.reference_u_marginal
                                  ? realize_marginal(*config.reference_u_marginal, Role::Input)
                                  : mu;
  const GaussianJoint gamma = build_reference(config.reference_coefficients(), ref_u);

  ExperimentReport report;
  if (config.run_mode == RunMode::Causal || config.run_mode == RunMode::Both)
    report.modes.push_back(run_mode(config, Mode::Causal, gamma, mu, nu, out));
  if (config.run_mode == RunMode::NonCausal || config.run_mode == RunMode::Both)
    report.modes.push_back(run_mode(config, Mode::NonCausal, gamma, mu, nu, out));

  report.exit_code = 0;
  for (const auto& m : report.modes)
    if (!m.converged) report.exit_code = 2;

  json doc;
  doc["modes"] = json::array();
  for (const auto& m : report.modes) {
    json jm;
    jm["mode"] = to_string(m.mode);
    jm["converged"] = m.converged;
    jm["sweeps"] = m.sweeps;
    jm["final_distance"] = m.final_distance;
    jm["causality"] = {{"overall_max", m.causality.overall_max},
                       {"tolerance", m.causality.tolerance},
                       {"pass", m.causality.pass}};
    jm["runtime_seconds"] = m.runtime_seconds;
    doc["modes"].push_back(std::move(jm));
  }
  doc["exit_code"] = report.exit_code;
  std::ofstream rf(out / "report.json");
  rf << doc.dump(2) << '\n';

  return report;
}

namespace {

FileDiff diff_csv_files(const std::string& a, const std::string& b, double tol,
                        const std::string& name) {
  const auto ra = read_csv(a);
  const auto rb = read_csv(b);
  if (ra.size() != rb.size())
    throw ShapeMismatch("row count differs between " + a + " and " + b);
  FileDiff d;
  d.name = name;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size())
      throw ShapeMismatch("row width differs between " + a + " and " + b);
    for (std::size_t j = 0; j < ra[i].size(); ++j)
      d.max_abs = std::max(d.max_abs, std::abs(ra[i][j] - rb[i][j]));
  }
  d.pass = d.max_abs <= tol;
  return d;
}

}  // namespace

DiffReport diff_artifacts(const std::string& path_a, const std::string& path_b, double tol) {
  DiffReport report;

  if (fs::is_directory(path_a) && fs::is_directory(path_b)) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(path_a))
      if (entry.path().extension() == ".csv") names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    if (names.empty()) throw ShapeMismatch("no CSV artifacts found in " + path_a);
    for (const auto& name : names) {
      const fs::path b = fs::path(path_b) / name;
      if (!fs::exists(b)) throw ShapeMismatch("missing artifact in " + path_b + ": " + name);
      report.files.push_back(
          diff_csv_files((fs::path(path_a) / name).string(), b.string(), tol, name));
    }
  } else {
    report.files.push_back(diff_csv_files(path_a, path_b, tol, fs::path(path_a).filename()));
  }

  for (const auto& f : report.files) report.max_abs = std::max(report.max_abs, f.max_abs);
  report.pass = std::all_of(report.files.begin(), report.files.end(),
                            [](const FileDiff& f) { return f.pass; });
  return report;
}

}  // namespace ecot
