#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "ecot/autoregressive.hpp"
#include "ecot/gaussian.hpp"

namespace ecot {

/// Per-step coefficients of the linear Gaussian input-output model
/// Y_t = h_t' U_{1:t} + f_t' Y_{1:t-1} + b_t + w_t,  w_t ~ N(0, eps_t^2).
struct CoefficientSpec {
  struct Step {
    Eigen::VectorXd h;  // length t
    Eigen::VectorXd f;  // length t-1
    double b = 0.0;
    double eps = 1.0;  // noise standard deviation, > 0
  };
  std::vector<Step> steps;

  int horizon() const { return static_cast<int>(steps.size()); }
  void validate() const;
};

/// Scalar linear Gaussian state-space model
/// X_t = F X_{t-1} + B U_t + Q^{1/2} V_t,  Y_t = H X_t + R^{1/2} W_t,
/// with initial state X_0 ~ N(x0, P0).
struct StateSpaceSpec {
  double F = 1.0, B = 1.0, Q = 1.0, H = 1.0, R = 1.0;
  double x0 = 0.0, P0 = 0.0;
  int T = 1;

  void validate() const;
};

/// Stationary-kernel (or explicit-covariance) Gaussian process marginal.
struct MarginalSpec {
  int T = 1;
  std::vector<double> grid;        // empty => uniform t_k = k/T on (0, 1]
  Eigen::VectorXd mean;            // length 1 (constant) or length T
  std::optional<double> sigma;     // kernel K(s; sigma) = exp(-|s| / (2 sigma^2))
  std::optional<Eigen::MatrixXd> explicit_cov;

  std::vector<double> resolved_grid() const;
  void validate() const;
};

/// Realize a marginal law from its spec; throws DegenerateKernelMatrix when
/// the resulting covariance fails the PD check (jitter 1e-10).
GaussianJoint realize_marginal(const MarginalSpec& spec, Role role = Role::Input);

/// Unroll the Kalman predictor of a state-space model into explicit per-step
/// coefficients: the predictive output mean as an affine function of
/// (u_{1:t}, y_{1:t-1}), and eps_t^2 = H P_{t|t-1} H + R from the Riccati
/// recursion.
CoefficientSpec kalman_coefficients(const StateSpaceSpec& ss);

/// Reference coupling: u-steps are the disintegration of u_marginal (zero
/// cross-coefficients), y-steps come from the coefficient spec. The output is
/// causal by construction.
GaussianJoint build_reference(const CoefficientSpec& coeffs, const GaussianJoint& u_marginal);

/// build_reference(kalman_coefficients(ss), u_marginal).
GaussianJoint reference_from_state_space(const StateSpaceSpec& ss,
                                         const GaussianJoint& u_marginal);

}  // namespace ecot
