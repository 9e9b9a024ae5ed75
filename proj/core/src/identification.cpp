#include "ecot/identification.hpp"

#include <cmath>

#include "ecot/errors.hpp"

namespace ecot {

CoefficientSpec extract_model(const GaussianJoint& coupling) {
  if (!coupling.is_coupling())
    throw DimensionMismatch("extract_model requires a full coupling");
  const int T = coupling.horizon();

  CoefficientSpec spec;
  spec.steps.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    auto& step = spec.steps[static_cast<std::size_t>(t - 1)];
    const std::vector<int> target = output_indices(T, t, t);
    std::vector<int> past = input_indices(T, 1, t);
    const std::vector<int> ypast = output_indices(T, 1, t - 1);
    past.insert(past.end(), ypast.begin(), ypast.end());
    const ConditionalGaussian c = condition(coupling, past, target);
    step.h = c.coeff.row(0).head(t).transpose();
    step.f = c.coeff.row(0).tail(t - 1).transpose();
    step.b = c.intercept(0);
    step.eps = std::sqrt(std::max(c.cov(0, 0), 0.0));
  }
  return spec;
}

CausalityReport check_causality(const GaussianJoint& coupling, double tol) {
  if (!coupling.is_coupling())
    throw DimensionMismatch("check_causality requires a full coupling");
  const int T = coupling.horizon();

  CausalityReport report;
  report.tolerance = tol;
  for (int t = 1; t <= T - 1; ++t) {
    const std::vector<int> given = input_indices(T, 1, t);
    std::vector<int> target = input_indices(T, t + 1, T);
    const std::vector<int> ypast = output_indices(T, 1, t);
    target.insert(target.end(), ypast.begin(), ypast.end());

    const ConditionalGaussian c = condition(coupling, given, target);
    // Cross block: future inputs (rows) vs past outputs (columns).
    const Eigen::MatrixXd cross =
        c.cov.topRightCorner(T - t, t);
    report.per_step_max.push_back(cross.size() == 0 ? 0.0 : cross.cwiseAbs().maxCoeff());
  }
  report.overall_max = 0.0;
  for (double v : report.per_step_max) report.overall_max = std::max(report.overall_max, v);
  report.pass = report.overall_max < tol;
  return report;
}

Eigen::MatrixXd conditional_cross_covariance(const GaussianJoint& coupling, double tau) {
  if (!coupling.is_coupling())
    throw DimensionMismatch("conditional cross-covariance requires a full coupling");
  if (!(tau > 0.0 && tau < 1.0))
    throw ValidationError("tau must lie in (0, 1)");
  const int T = coupling.horizon();
  const int k = static_cast<int>(std::floor(tau * T + 1e-12));

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(T, T);
  if (k == 0) {
    // Nothing to condition on: plain cross-covariance.
    out = coupling.cov.topRightCorner(T, T);
    return out;
  }

  const std::vector<int> given = input_indices(T, 1, k);
  std::vector<int> target = input_indices(T, k + 1, T);
  const std::vector<int> yall = output_indices(T, 1, T);
  target.insert(target.end(), yall.begin(), yall.end());

  const ConditionalGaussian c = condition(coupling, given, target);
  // Conditional covariance rows t = k+1..T against all outputs; rows t <= k
  // are fixed by the conditioning and stay exactly zero.
  const Eigen::MatrixXd cross = c.cov.topRightCorner(T - k, T);
  out.bottomRows(T - k) = cross;
  return out;
}

Eigen::MatrixXd symlog_transform(const Eigen::MatrixXd& m, double linthresh) {
  if (!(linthresh > 0.0)) throw ValidationError("symlog linthresh must be > 0");
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double x = m(i, j);
      const double v = std::log10(1.0 + std::abs(x) / linthresh);
      out(i, j) = x < 0.0 ? -v : v;
    }
  return out;
}

}  // namespace ecot
