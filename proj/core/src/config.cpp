#include "ecot/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "ecot/errors.hpp"

namespace ecot {

using nlohmann::json;

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::Causal: return "causal";
    case RunMode::NonCausal: return "noncausal";
    default: return "both";
  }
}

std::string to_string(Mode m) { return m == Mode::Causal ? "causal" : "noncausal"; }

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& ctx) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + ctx);
}

double num(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw ValidationError(ctx + " must be a number");
  return j.get<double>();
}

MarginalSpec parse_marginal(const json& j, int T, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + " must be an object");
  check_keys(j, {"mean", "kernel_sigma", "cov", "grid"}, ctx);

  MarginalSpec spec;
  spec.T = T;
  if (!j.contains("mean")) throw ValidationError(ctx + " requires 'mean'");
  if (j["mean"].is_number()) {
    spec.mean = Eigen::VectorXd::Constant(1, j["mean"].get<double>());
  } else if (j["mean"].is_array()) {
    const auto v = j["mean"].get<std::vector<double>>();
    spec.mean = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  } else {
    throw ValidationError(ctx + ".mean must be a number or array");
  }
  if (j.contains("kernel_sigma")) spec.sigma = num(j["kernel_sigma"], ctx + ".kernel_sigma");
  if (j.contains("cov")) {
    const auto rows = j["cov"].get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd cov(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw ValidationError(ctx + ".cov must be rectangular");
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
    spec.explicit_cov = std::move(cov);
  }
  if (j.contains("grid")) spec.grid = j["grid"].get<std::vector<double>>();
  spec.validate();
  return spec;
}

std::variant<CoefficientSpec, StateSpaceSpec> parse_reference(const json& j, int T) {
  if (!j.is_object()) throw ValidationError("reference must be an object");
  check_keys(j, {"state_space", "coefficients"}, "reference");
  if (j.contains("state_space") == j.contains("coefficients"))
    throw ValidationError("reference requires exactly one of 'state_space' or 'coefficients'");

  if (j.contains("state_space")) {
    const json& s = j["state_space"];
    check_keys(s, {"F", "B", "Q", "H", "R", "x0", "P0"}, "reference.state_space");
    StateSpaceSpec ss;
    ss.T = T;
    if (s.contains("F")) ss.F = num(s["F"], "F");
    if (s.contains("B")) ss.B = num(s["B"], "B");
    if (s.contains("Q")) ss.Q = num(s["Q"], "Q");
    if (s.contains("H")) ss.H = num(s["H"], "H");
    if (s.contains("R")) ss.R = num(s["R"], "R");
    if (s.contains("x0")) ss.x0 = num(s["x0"], "x0");
    if (s.contains("P0")) ss.P0 = num(s["P0"], "P0");
    ss.validate();
    return ss;
  }

  const json& c = j["coefficients"];
  check_keys(c, {"h", "f", "b", "eps"}, "reference.coefficients");
  CoefficientSpec spec;
  const auto h = c.at("h").get<std::vector<std::vector<double>>>();
  const auto f = c.at("f").get<std::vector<std::vector<double>>>();
  const auto b = c.at("b").get<std::vector<double>>();
  const auto eps = c.at("eps").get<std::vector<double>>();
  if (h.size() != static_cast<std::size_t>(T) || f.size() != h.size() ||
      b.size() != h.size() || eps.size() != h.size())
    throw ValidationError("reference.coefficients arrays must all have length T");
  spec.steps.resize(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) {
    auto& step = spec.steps[t];
    step.h = Eigen::Map<const Eigen::VectorXd>(h[t].data(), static_cast<Eigen::Index>(h[t].size()));
    step.f = Eigen::Map<const Eigen::VectorXd>(f[t].data(), static_cast<Eigen::Index>(f[t].size()));
    step.b = b[t];
    step.eps = eps[t];
  }
  spec.validate();
  return spec;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (T < 1) throw ValidationError("T must be >= 1");
  if (mu.T != T || nu.T != T) throw ValidationError("marginal horizons must equal T");
  mu.validate();
  nu.validate();
  settings.validate();
  if (std::holds_alternative<CoefficientSpec>(reference)) {
    const auto& c = std::get<CoefficientSpec>(reference);
    if (c.horizon() != T) throw ValidationError("reference coefficient horizon must equal T");
    c.validate();
  } else {
    const auto& s = std::get<StateSpaceSpec>(reference);
    if (s.T != T) throw ValidationError("reference state-space horizon must equal T");
    s.validate();
  }
  if (reference_u_marginal) {
    if (reference_u_marginal->T != T)
      throw ValidationError("reference U-marginal horizon must equal T");
    reference_u_marginal->validate();
  }
  for (double tau : outputs.taus)
    if (!(tau > 0.0 && tau < 1.0)) throw ValidationError("tau values must lie in (0, 1)");
  if (!(outputs.symlog_linthresh > 0.0))
    throw ValidationError("symlog_linthresh must be > 0");
}

CoefficientSpec ExperimentConfig::reference_coefficients() const {
  if (std::holds_alternative<CoefficientSpec>(reference))
    return std::get<CoefficientSpec>(reference);
  return kalman_coefficients(std::get<StateSpaceSpec>(reference));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config root must be an object");
  check_keys(j,
             {"T", "mu", "nu", "reference", "reference_u_marginal", "settings", "mode",
              "outputs"},
             "config");

  ExperimentConfig cfg;
  if (!j.contains("T") || !j["T"].is_number_integer())
    throw ValidationError("config requires integer 'T'");
  cfg.T = j["T"].get<int>();
  if (cfg.T < 1) throw ValidationError("T must be >= 1");

  if (!j.contains("mu") || !j.contains("nu") || !j.contains("reference"))
    throw ValidationError("config requires 'mu', 'nu' and 'reference'");
  cfg.mu = parse_marginal(j["mu"], cfg.T, "mu");
  cfg.nu = parse_marginal(j["nu"], cfg.T, "nu");
  cfg.reference = parse_reference(j["reference"], cfg.T);
  if (j.contains("reference_u_marginal"))
    cfg.reference_u_marginal =
        parse_marginal(j["reference_u_marginal"], cfg.T, "reference_u_marginal");

  if (j.contains("settings")) {
    const json& s = j["settings"];
    check_keys(s, {"tol", "max_sweeps", "delta_floor"}, "settings");
    if (s.contains("tol")) cfg.settings.tol = num(s["tol"], "settings.tol");
    if (s.contains("max_sweeps")) {
      if (!s["max_sweeps"].is_number_integer())
        throw ValidationError("settings.max_sweeps must be an integer");
      cfg.settings.max_sweeps = s["max_sweeps"].get<int>();
    }
    if (s.contains("delta_floor"))
      cfg.settings.delta_floor = num(s["delta_floor"], "settings.delta_floor");
  }

  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "causal")
      cfg.run_mode = RunMode::Causal;
    else if (m == "noncausal")
      cfg.run_mode = RunMode::NonCausal;
    else if (m == "both")
      cfg.run_mode = RunMode::Both;
    else
      throw ValidationError("mode must be 'causal', 'noncausal' or 'both'");
  }

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, {"coupling", "history", "model", "taus", "symlog_linthresh"}, "outputs");
    if (o.contains("coupling")) cfg.outputs.coupling = o["coupling"].get<bool>();
    if (o.contains("history")) cfg.outputs.history = o["history"].get<bool>();
    if (o.contains("model")) cfg.outputs.model = o["model"].get<bool>();
    if (o.contains("taus")) cfg.outputs.taus = o["taus"].get<std::vector<double>>();
    if (o.contains("symlog_linthresh"))
      cfg.outputs.symlog_linthresh = num(o["symlog_linthresh"], "outputs.symlog_linthresh");
  }

  cfg.validate();
  return cfg;
}

bool is_preset_name(const std::string& name) {
  return name == "paper_fig1" || name == "trivial" || name == "smoke4";
}

ExperimentConfig preset_config(const std::string& name) {
  auto kernel_marginal = [](int T, double mean, double sigma) {
    MarginalSpec m;
    m.T = T;
    m.mean = Eigen::VectorXd::Constant(1, mean);
    m.sigma = sigma;
    return m;
  };

  if (name == "paper_fig1" || name == "smoke4") {
    ExperimentConfig cfg;
    cfg.T = name == "smoke4" ? 4 : 128;
    cfg.mu = kernel_marginal(cfg.T, 1.0, 1.0);
    cfg.nu = kernel_marginal(cfg.T, 0.0, 0.5);
    StateSpaceSpec ss;
    ss.T = cfg.T;
    cfg.reference = ss;  // F=B=Q=H=R=1, x0=P0=0
    cfg.validate();
    return cfg;
  }

  if (name == "trivial") {
    // Marginals equal to the reference coupling's own: a double fixed point.
    ExperimentConfig cfg;
    cfg.T = 8;
    cfg.mu = kernel_marginal(cfg.T, 1.0, 1.0);
    StateSpaceSpec ss;
    ss.T = cfg.T;
    cfg.reference = ss;

    const GaussianJoint mu_joint = realize_marginal(cfg.mu, Role::Input);
    const GaussianJoint gamma = reference_from_state_space(ss, mu_joint);
    const GaussianJoint gamma_y = marginalize(gamma, output_indices(cfg.T, 1, cfg.T));

    MarginalSpec nu;
    nu.T = cfg.T;
    nu.mean = gamma_y.mean;
    nu.explicit_cov = gamma_y.cov;
    cfg.nu = std::move(nu);
    cfg.validate();
    return cfg;
  }

  throw ValidationError("unknown preset: " + name);
}

}  // namespace ecot
