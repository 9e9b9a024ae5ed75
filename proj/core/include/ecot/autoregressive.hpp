#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ecot/gaussian.hpp"

namespace ecot {

/// Temporal disintegration of a full coupling into per-step affine-Gaussian
/// conditionals: u_t | (u_{1:t-1}, y_{1:t-1}) and y_t | (u_{1:t}, y_{1:t-1}).
struct AutoregressiveForm {
  struct UStep {
    Eigen::VectorXd k_on_u;  // length t-1
    Eigen::VectorXd k_on_y;  // length t-1
    double mean = 0.0;
    double var = 0.0;
  };
  struct YStep {
    Eigen::VectorXd k_on_u;  // length t
    Eigen::VectorXd k_on_y;  // length t-1
    double mean = 0.0;
    double var = 0.0;
  };

  std::vector<UStep> u_steps;  // index t-1
  std::vector<YStep> y_steps;  // index t-1

  int horizon() const { return static_cast<int>(u_steps.size()); }

  /// Structural check: coefficient lengths match the step index, variances >= 0.
  void validate() const;
};

/// Temporal factorization of a full coupling (block storage, interleaved
/// conditioning order). One Cholesky of the interleaved covariance plus one
/// triangular solve per coordinate.
AutoregressiveForm disintegrate(const GaussianJoint& joint);

/// Inverse of disintegrate: assemble the joint law by forward substitution of
/// the per-step affine maps driven by independent step noises.
GaussianJoint recompose(const AutoregressiveForm& ar);

/// Conditional law of z_{t+1:T} given z_{1:t} (z_s = (u_s, y_s)), computed by
/// forward composition of the affine steps s = t+1..T; no matrix inversion.
/// Given and target coordinates are in block order (inputs first). For t = T
/// the target is empty.
ConditionalGaussian future_given_past(const AutoregressiveForm& ar, int t);

}  // namespace ecot
