#include "ecot/sinkhorn.hpp"

#include <chrono>

#include "ecot/autoregressive.hpp"
#include "ecot/errors.hpp"

namespace ecot {

void SinkhornSettings::validate() const {
  if (!(tol > 0.0)) throw ValidationError("sinkhorn tol must be > 0");
  if (max_sweeps < 1) throw ValidationError("sinkhorn max_sweeps must be >= 1");
  if (delta_floor < 0.0) throw ValidationError("sinkhorn delta_floor must be >= 0");
}

namespace {

void check_projection_inputs(const GaussianJoint& prev, const GaussianJoint& marginal) {
  if (!prev.is_coupling())
    throw DimensionMismatch("projection requires a full coupling");
  if (marginal.dim() != prev.horizon())
    throw DimensionMismatch("marginal dimension must equal the coupling horizon");
}

}  // namespace

GaussianJoint odd_projection_causal(const GaussianJoint& prev, const GaussianJoint& mu,
                                    double delta_floor) {
  check_projection_inputs(prev, mu);
  const int T = prev.horizon();

  std::vector<ChainStep> mu_chain;
  try {
    mu_chain = sequential_regression(mu.mean, mu.cov);
  } catch (const SingularConditioningBlock&) {
    throw DegenerateMarginal("mu is degenerate in the causal odd projection");
  }

  const AutoregressiveForm prev_ar = disintegrate(prev);

  // Precision matrix of prev in interleaved order. Its lower-right block over
  // the future coordinates is the inverse of the future-given-past covariance.
  const std::vector<int> order = prev.layout.interleaved_order();
  const Eigen::MatrixXd cov_int = detail::gather(prev.cov, order, order);
  Eigen::LLT<Eigen::MatrixXd> llt(cov_int);
  if (llt.info() != Eigen::Success)
    throw SingularFutureCovariance("previous coupling has a singular covariance");
  const Eigen::MatrixXd precision = llt.solve(Eigen::MatrixXd::Identity(2 * T, 2 * T));

  AutoregressiveForm pi_ar;
  pi_ar.u_steps.resize(static_cast<std::size_t>(T));
  pi_ar.y_steps.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    auto& u = pi_ar.u_steps[static_cast<std::size_t>(t - 1)];
    const ChainStep& c = mu_chain[static_cast<std::size_t>(t - 1)];
    u.k_on_u = c.coeff;
    u.k_on_y = Eigen::VectorXd::Zero(t - 1);
    u.mean = c.intercept;
    u.var = c.var;
    auto& y = pi_ar.y_steps[static_cast<std::size_t>(t - 1)];
    y.k_on_u = Eigen::VectorXd::Zero(t);
    y.k_on_y = Eigen::VectorXd::Zero(t - 1);
  }

  for (int t = T; t >= 1; --t) {
    const auto& yp = prev_ar.y_steps[static_cast<std::size_t>(t - 1)];
    auto& yn = pi_ar.y_steps[static_cast<std::size_t>(t - 1)];

    if (t == T) {  // empty future: alpha = 1, keep prev's conditional
      yn = yp;
      continue;
    }

    const ConditionalGaussian c_pi = future_given_past(pi_ar, t);
    const ConditionalGaussian c_prev = future_given_past(prev_ar, t);
    const int f = 2 * (T - t);

    // Column blocks in the given layout (u_{1:t}, y_{1:t}).
    const Eigen::VectorXd delta =
        c_pi.coeff.col(2 * t - 1) - c_prev.coeff.col(2 * t - 1);
    const Eigen::MatrixXd delta_u =
        c_pi.coeff.leftCols(t) - c_prev.coeff.leftCols(t);
    const Eigen::MatrixXd delta_y =
        c_pi.coeff.middleCols(t, t - 1) - c_prev.coeff.middleCols(t, t - 1);
    const Eigen::VectorXd delta_m = c_pi.intercept - c_prev.intercept;

    // Gather the precision block in the block order of the conditional rows.
    std::vector<int> fut(static_cast<std::size_t>(f));
    for (int r = 0; r < T - t; ++r) {
      fut[static_cast<std::size_t>(r)] = 2 * (t + r);              // u_{t+1+r}
      fut[static_cast<std::size_t>(T - t + r)] = 2 * (t + r) + 1;  // y_{t+1+r}
    }
    Eigen::MatrixXd M(f, f);
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j)
        M(i, j) = precision(fut[static_cast<std::size_t>(i)],
                            fut[static_cast<std::size_t>(j)]);

    const Eigen::VectorXd w = M * delta;
    const double beta = delta.dot(w);

    const double var_prev = yp.var;
    double alpha, var_pi;
    if (beta <= delta_floor) {
      alpha = 1.0;
      var_pi = var_prev;
    } else {
      alpha = 1.0 / (1.0 + var_prev * beta);
      var_pi = var_prev * alpha;
    }

    yn.k_on_u = alpha * yp.k_on_u - var_pi * (delta_u.transpose() * w);
    yn.k_on_y = alpha * yp.k_on_y - var_pi * (delta_y.transpose() * w);
    yn.mean = alpha * yp.mean - var_pi * delta_m.dot(w);
    yn.var = var_pi;
  }

  return recompose(pi_ar);
}

GaussianJoint odd_projection_noncausal(const GaussianJoint& prev, const GaussianJoint& mu) {
  check_projection_inputs(prev, mu);
  const int T = prev.horizon();

  const ConditionalGaussian y_given_u =
      condition(prev, input_indices(T, 1, T), output_indices(T, 1, T));
  const Eigen::MatrixXd& K = y_given_u.coeff;

  Eigen::VectorXd mean(2 * T);
  mean.head(T) = mu.mean;
  mean.tail(T) = K * mu.mean + y_given_u.intercept;

  Eigen::MatrixXd cov(2 * T, 2 * T);
  cov.topLeftCorner(T, T) = mu.cov;
  cov.topRightCorner(T, T) = mu.cov * K.transpose();
  cov.bottomLeftCorner(T, T) = K * mu.cov;
  cov.bottomRightCorner(T, T) = y_given_u.cov + K * mu.cov * K.transpose();

  return GaussianJoint::make(std::move(mean), std::move(cov), Layout::coupling(T));
}

GaussianJoint even_projection(const GaussianJoint& prev, const GaussianJoint& nu) {
  check_projection_inputs(prev, nu);
  const int T = prev.horizon();

  const ConditionalGaussian u_given_y =
      condition(prev, output_indices(T, 1, T), input_indices(T, 1, T));
  const Eigen::MatrixXd& K = u_given_y.coeff;

  Eigen::VectorXd mean(2 * T);
  mean.head(T) = K * nu.mean + u_given_y.intercept;
  mean.tail(T) = nu.mean;

  Eigen::MatrixXd cov(2 * T, 2 * T);
  cov.topLeftCorner(T, T) = u_given_y.cov + K * nu.cov * K.transpose();
  cov.topRightCorner(T, T) = K * nu.cov;
  cov.bottomLeftCorner(T, T) = nu.cov * K.transpose();
  cov.bottomRightCorner(T, T) = nu.cov;

  return GaussianJoint::make(std::move(mean), std::move(cov), Layout::coupling(T));
}

SinkhornResult run(const GaussianJoint& reference, const GaussianJoint& mu,
                   const GaussianJoint& nu, const SinkhornSettings& settings) {
  settings.validate();
  check_projection_inputs(reference, mu);
  check_projection_inputs(reference, nu);

  SinkhornResult result{reference, 0, false, {}};
  for (int sweep = 1; sweep <= settings.max_sweeps; ++sweep) {
    const auto start = std::chrono::steady_clock::now();
    const GaussianJoint before = result.coupling;

    GaussianJoint odd = settings.mode == Mode::Causal
                            ? odd_projection_causal(before, mu, settings.delta_floor)
                            : odd_projection_noncausal(before, mu);
    result.coupling = even_projection(odd, nu);

    const double dist = joint_distance(result.coupling, before);
    const double kl = kl_divergence(result.coupling, reference);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.history.push_back({sweep, dist, kl, secs});
    result.sweeps = sweep;
    if (dist < settings.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace ecot
