#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ecot/layout.hpp"

namespace ecot {

/// Joint Gaussian law N(mean, cov) with a coordinate layout.
///
/// Immutable after construction; `make` validates symmetry (1e-12 relative)
/// and positive semidefiniteness (eigenvalues >= -1e-10 * ||cov||, negatives
/// within that band clipped to zero).
struct GaussianJoint {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  Layout layout;

  static GaussianJoint make(Eigen::VectorXd mean, Eigen::MatrixXd cov, Layout layout);

  Eigen::Index dim() const { return mean.size(); }
  int horizon() const { return layout.horizon(); }
  bool is_coupling() const { return layout.is_full_coupling(); }
};

/// Affine-Gaussian conditional law: target | given ~ N(coeff * given + intercept, cov).
struct ConditionalGaussian {
  Eigen::MatrixXd coeff;      // n_target x n_given
  Eigen::VectorXd intercept;  // n_target
  Eigen::MatrixXd cov;        // n_target x n_target, symmetric PSD
  Layout given_layout;
  Layout target_layout;

  Eigen::Index n_target() const { return intercept.size(); }
  Eigen::Index n_given() const { return coeff.cols(); }
};

/// Gaussian conditioning via a symmetric factorization of the given block.
/// coeff = S_tg S_gg^-1, intercept = m_t - coeff m_g, cov = Schur complement.
/// Throws SingularConditioningBlock when the given block is singular or its
/// condition number exceeds 1e12.
ConditionalGaussian condition(const GaussianJoint& joint,
                              const std::vector<int>& given,
                              const std::vector<int>& target);

/// Restriction of the law to the kept coordinates.
GaussianJoint marginalize(const GaussianJoint& joint, const std::vector<int>& keep);

/// KL divergence D(p || q) in closed Gaussian form; clamped to 0 within -1e-9.
double kl_divergence(const GaussianJoint& p, const GaussianJoint& q);

/// Max-abs difference over all mean and covariance entries.
double joint_distance(const GaussianJoint& p, const GaussianJoint& q);

/// One step of a sequential (prefix) regression chain: coordinate i as an
/// affine function of coordinates 0..i-1 plus independent Gaussian noise.
struct ChainStep {
  Eigen::VectorXd coeff;  // length i
  double intercept = 0.0;
  double var = 0.0;
};

/// Sequential regression of each coordinate on all preceding ones, in the
/// order the coordinates are stored. One Cholesky factorization, then one
/// triangular solve per coordinate. Throws SingularConditioningBlock when the
/// covariance is not positive definite.
std::vector<ChainStep> sequential_regression(const Eigen::VectorXd& mean,
                                             const Eigen::MatrixXd& cov);

namespace detail {
/// Submatrix / subvector gather helpers.
Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols);
Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx);
}  // namespace detail

}  // namespace ecot
