#include "ecot/reference.hpp"

#include <cmath>

#include "ecot/errors.hpp"

namespace ecot {

void CoefficientSpec::validate() const {
  for (int t = 1; t <= horizon(); ++t) {
    const Step& s = steps[static_cast<std::size_t>(t - 1)];
    if (s.h.size() != t || s.f.size() != t - 1)
      throw ValidationError("coefficient spec lengths must be t and t-1");
    if (!(s.eps > 0.0)) throw ValidationError("coefficient spec requires eps_t > 0");
  }
}

void StateSpaceSpec::validate() const {
  if (!(R > 0.0)) throw ValidationError("state-space spec requires R > 0");
  if (Q < 0.0 || P0 < 0.0) throw ValidationError("state-space spec requires Q, P0 >= 0");
  if (T < 1) throw ValidationError("state-space spec requires T >= 1");
}

std::vector<double> MarginalSpec::resolved_grid() const {
  if (!grid.empty()) return grid;
  std::vector<double> g(static_cast<std::size_t>(T));
  for (int k = 1; k <= T; ++k) g[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) / T;
  return g;
}

void MarginalSpec::validate() const {
  if (T < 1) throw ValidationError("marginal spec requires T >= 1");
  if (!grid.empty() && grid.size() != static_cast<std::size_t>(T))
    throw ValidationError("marginal grid length must equal T");
  if (mean.size() != 1 && mean.size() != T)
    throw ValidationError("marginal mean must be constant or length T");
  if (sigma.has_value() == explicit_cov.has_value())
    throw ValidationError("marginal spec needs exactly one of kernel sigma or explicit covariance");
  if (sigma && !(*sigma > 0.0)) throw ValidationError("kernel sigma must be > 0");
  if (explicit_cov && (explicit_cov->rows() != T || explicit_cov->cols() != T))
    throw ValidationError("explicit covariance must be T x T");
}

GaussianJoint realize_marginal(const MarginalSpec& spec, Role role) {
  spec.validate();
  const int T = spec.T;

  Eigen::VectorXd mean(T);
  if (spec.mean.size() == 1)
    mean.setConstant(spec.mean(0));
  else
    mean = spec.mean;

  Eigen::MatrixXd cov(T, T);
  if (spec.explicit_cov) {
    cov = *spec.explicit_cov;
  } else {
    const double s2 = 2.0 * (*spec.sigma) * (*spec.sigma);
    const std::vector<double> g = spec.resolved_grid();
    for (int i = 0; i < T; ++i)
      for (int j = 0; j < T; ++j)
        cov(i, j) = std::exp(-std::abs(g[static_cast<std::size_t>(i)] -
                                       g[static_cast<std::size_t>(j)]) /
                             s2);
  }

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    Eigen::MatrixXd jittered = cov + 1e-10 * Eigen::MatrixXd::Identity(T, T);
    if (Eigen::LLT<Eigen::MatrixXd>(jittered).info() != Eigen::Success)
      throw DegenerateKernelMatrix("marginal covariance is not positive definite");
  }
  return GaussianJoint::make(std::move(mean), std::move(cov), Layout::marginal(role, T));
}

CoefficientSpec kalman_coefficients(const StateSpaceSpec& ss) {
  ss.validate();
  const int T = ss.T;

  CoefficientSpec out;
  out.steps.resize(static_cast<std::size_t>(T));

  // Filtered state mean as an explicit affine function of (u_{1:t}, y_{1:t}).
  Eigen::VectorXd a_u = Eigen::VectorXd::Zero(T);
  Eigen::VectorXd a_y = Eigen::VectorXd::Zero(T);
  double a_c = ss.x0;
  double P = ss.P0;  // filtered variance

  for (int t = 1; t <= T; ++t) {
    // Predict: x_{t|t-1} = F x_{t-1|t-1} + B u_t.
    a_u *= ss.F;
    a_y *= ss.F;
    a_c *= ss.F;
    a_u(t - 1) += ss.B;
    const double P_pred = ss.F * P * ss.F + ss.Q;

    auto& step = out.steps[static_cast<std::size_t>(t - 1)];
    step.h = ss.H * a_u.head(t);
    step.f = ss.H * a_y.head(t - 1);
    step.b = ss.H * a_c;
    const double innov_var = ss.H * P_pred * ss.H + ss.R;
    step.eps = std::sqrt(innov_var);

    // Update: x_{t|t} = x_{t|t-1} + K (y_t - H x_{t|t-1}).
    const double gain = P_pred * ss.H / innov_var;
    a_u *= (1.0 - gain * ss.H);
    a_y *= (1.0 - gain * ss.H);
    a_c *= (1.0 - gain * ss.H);
    a_y(t - 1) += gain;
    P = (1.0 - gain * ss.H) * P_pred;
  }
  return out;
}

GaussianJoint build_reference(const CoefficientSpec& coeffs, const GaussianJoint& u_marginal) {
  coeffs.validate();
  const int T = coeffs.horizon();
  if (u_marginal.dim() != T)
    throw DimensionMismatch("u_marginal dimension must equal the coefficient horizon");

  const std::vector<ChainStep> u_chain = sequential_regression(u_marginal.mean, u_marginal.cov);

  AutoregressiveForm ar;
  ar.u_steps.resize(static_cast<std::size_t>(T));
  ar.y_steps.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    auto& u = ar.u_steps[static_cast<std::size_t>(t - 1)];
    const ChainStep& c = u_chain[static_cast<std::size_t>(t - 1)];
    u.k_on_u = c.coeff;
    u.k_on_y = Eigen::VectorXd::Zero(t - 1);
    u.mean = c.intercept;
    u.var = c.var;

    auto& y = ar.y_steps[static_cast<std::size_t>(t - 1)];
    const auto& s = coeffs.steps[static_cast<std::size_t>(t - 1)];
    y.k_on_u = s.h;
    y.k_on_y = s.f;
    y.mean = s.b;
    y.var = s.eps * s.eps;
  }
  return recompose(ar);
}

GaussianJoint reference_from_state_space(const StateSpaceSpec& ss,
                                         const GaussianJoint& u_marginal) {
  return build_reference(kalman_coefficients(ss), u_marginal);
}

}  // namespace ecot
