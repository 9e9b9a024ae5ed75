#include "ecot/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "ecot/errors.hpp"

namespace ecot {

namespace detail {

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  return out;
}

}  // namespace detail

namespace {

constexpr double kSymmetryRelTol = 1e-12;
constexpr double kPsdRelTol = 1e-10;
constexpr double kConditionGuard = 1e12;

void check_indices(const std::vector<int>& idx, Eigen::Index d, const char* what) {
  for (int i : idx)
    if (i < 0 || i >= d) throw DimensionMismatch(std::string(what) + " index out of range");
}

}  // namespace

GaussianJoint GaussianJoint::make(Eigen::VectorXd mean, Eigen::MatrixXd cov, Layout layout) {
  const Eigen::Index d = mean.size();
  if (cov.rows() != d || cov.cols() != d)
    throw DimensionMismatch("mean/cov dimension mismatch");
  if (layout.size() != static_cast<std::size_t>(d))
    throw DimensionMismatch("layout size does not match dimension");

  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1.0);
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryRelTol * scale)
    throw DimensionMismatch("covariance is not symmetric");
  cov = 0.5 * (cov + cov.transpose());

  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double norm = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1.0);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kPsdRelTol * norm)
      throw DegenerateMarginal("covariance has an eigenvalue below the PSD tolerance");
    if (min_eig < 0.0) {
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
      cov = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
      cov = 0.5 * (cov + cov.transpose());
    }
  }
  return GaussianJoint{std::move(mean), std::move(cov), std::move(layout)};
}

ConditionalGaussian condition(const GaussianJoint& joint,
                              const std::vector<int>& given,
                              const std::vector<int>& target) {
  const Eigen::Index d = joint.dim();
  if (given.empty()) throw EmptyIndexSet("conditioning requires a non-empty given set");
  check_indices(given, d, "given");
  check_indices(target, d, "target");
  for (int g : given)
    for (int t : target)
      if (g == t) throw DimensionMismatch("given and target index sets overlap");

  const Eigen::MatrixXd S_gg = detail::gather(joint.cov, given, given);
  const Eigen::MatrixXd S_tg = detail::gather(joint.cov, target, given);
  const Eigen::MatrixXd S_tt = detail::gather(joint.cov, target, target);
  const Eigen::VectorXd m_g = detail::gather(joint.mean, given);
  const Eigen::VectorXd m_t = detail::gather(joint.mean, target);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(S_gg);
  if (ldlt.info() != Eigen::Success)
    throw SingularConditioningBlock("LDLT factorization of the given block failed");
  const Eigen::VectorXd dvec = ldlt.vectorD();
  const double dmax = dvec.cwiseAbs().maxCoeff();
  const double dmin = dvec.minCoeff();
  if (dmin <= 0.0 || dmax / dmin > kConditionGuard)
    throw SingularConditioningBlock("given block is singular or ill-conditioned");

  const Eigen::MatrixXd coeff = ldlt.solve(S_tg.transpose()).transpose();
  Eigen::MatrixXd cov = S_tt - coeff * S_tg.transpose();
  cov = 0.5 * (cov + cov.transpose());
  Eigen::VectorXd intercept = m_t - coeff * m_g;

  return ConditionalGaussian{coeff, std::move(intercept), std::move(cov),
                             joint.layout.select(given), joint.layout.select(target)};
}

GaussianJoint marginalize(const GaussianJoint& joint, const std::vector<int>& keep) {
  if (keep.empty()) throw EmptyIndexSet("marginalize requires a non-empty keep set");
  check_indices(keep, joint.dim(), "keep");
  return GaussianJoint::make(detail::gather(joint.mean, keep),
                             detail::gather(joint.cov, keep, keep),
                             joint.layout.select(keep));
}

double kl_divergence(const GaussianJoint& p, const GaussianJoint& q) {
  if (p.dim() != q.dim() || !(p.layout == q.layout))
    throw DimensionMismatch("KL divergence requires matching dimension and layout");
  const Eigen::Index d = p.dim();

  Eigen::LLT<Eigen::MatrixXd> llt_q(q.cov);
  if (llt_q.info() != Eigen::Success)
    throw SingularConditioningBlock("degenerate covariance in KL reference argument");
  Eigen::LLT<Eigen::MatrixXd> llt_p(p.cov);
  if (llt_p.info() != Eigen::Success)
    throw SingularConditioningBlock("degenerate covariance in KL first argument");

  const Eigen::MatrixXd qinv_p = llt_q.solve(p.cov);
  const Eigen::VectorXd dm = q.mean - p.mean;
  const double quad = dm.dot(llt_q.solve(dm));

  double logdet_q = 0.0, logdet_p = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    logdet_q += 2.0 * std::log(llt_q.matrixL()(i, i));
    logdet_p += 2.0 * std::log(llt_p.matrixL()(i, i));
  }

  double kl = 0.5 * (qinv_p.trace() - static_cast<double>(d) + quad + logdet_q - logdet_p);
  if (kl < 0.0) {
    if (kl < -1e-9) throw DegenerateMarginal("KL divergence evaluated below -1e-9");
    kl = 0.0;
  }
  return kl;
}

double joint_distance(const GaussianJoint& p, const GaussianJoint& q) {
  if (p.dim() != q.dim() || !(p.layout == q.layout))
    throw DimensionMismatch("joint distance requires matching dimension and layout");
  const double dm = p.dim() == 0 ? 0.0 : (p.mean - q.mean).cwiseAbs().maxCoeff();
  const double dc = p.dim() == 0 ? 0.0 : (p.cov - q.cov).cwiseAbs().maxCoeff();
  return std::max(dm, dc);
}

std::vector<ChainStep> sequential_regression(const Eigen::VectorXd& mean,
                                             const Eigen::MatrixXd& cov) {
  const Eigen::Index d = mean.size();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw SingularConditioningBlock("sequential regression requires a PD covariance");
  const Eigen::MatrixXd L = llt.matrixL();

  // With cov = L L^T the regression of coordinate i on coordinates 0..i-1 has
  // coefficients K_i^T = L_P^{-T} a, a = L(i, 0:i), and residual variance L(i,i)^2.
  std::vector<ChainStep> steps(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    ChainStep s;
    if (i == 0) {
      s.coeff = Eigen::VectorXd(0);
    } else {
      Eigen::VectorXd a = L.row(i).head(i).transpose();
      s.coeff = L.topLeftCorner(i, i)
                    .transpose()
                    .triangularView<Eigen::Upper>()
                    .solve(a);
    }
    s.var = L(i, i) * L(i, i);
    s.intercept = mean(i) - s.coeff.dot(mean.head(i));
    steps[static_cast<std::size_t>(i)] = std::move(s);
  }
  return steps;
}

}  // namespace ecot
