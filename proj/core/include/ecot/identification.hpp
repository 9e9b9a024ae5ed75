#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ecot/gaussian.hpp"
#include "ecot/reference.hpp"

namespace ecot {

/// Per-step conditional cross-covariance violations of the causality
/// constraint Cov(U_{t+1:T}, Y_{1:t} | U_{1:t}) = 0.
struct CausalityReport {
  std::vector<double> per_step_max;  // index t-1, t = 1..T-1
  double overall_max = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Recover the input-output model from a coupling by conditioning Y_t on
/// past_t = (U_{1:t}, Y_{1:t-1}).
CoefficientSpec extract_model(const GaussianJoint& coupling);

/// Check the Gaussian causality criterion: zero conditional cross-covariance
/// between future inputs and past outputs given past inputs.
CausalityReport check_causality(const GaussianJoint& coupling, double tol = 1e-8);

/// Matrix of Cov(U_t, Y_s | U_{1:k}) with k = floor(tau * T) grid points at or
/// before the time fraction tau. Rows with t <= k are exactly zero.
Eigen::MatrixXd conditional_cross_covariance(const GaussianJoint& coupling, double tau);

/// Sign-preserving logarithmic display transform:
/// x -> sign(x) * log10(1 + |x| / linthresh).
Eigen::MatrixXd symlog_transform(const Eigen::MatrixXd& m, double linthresh = 1e-6);

}  // namespace ecot
