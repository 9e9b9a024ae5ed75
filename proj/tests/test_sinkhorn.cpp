#include <doctest.h>

#include "ecot/errors.hpp"
#include "ecot/identification.hpp"
#include "ecot/sinkhorn.hpp"
#include "support/oracles.hpp"
#include "support/test_utils.hpp"

using namespace ecot;

namespace {

GaussianJoint marginal_of(const GaussianJoint& coupling, Role role) {
  const int T = coupling.horizon();
  return marginalize(coupling, role == Role::Input ? input_indices(T, 1, T)
                                                   : output_indices(T, 1, T));
}

GaussianJoint additive_t1_joint() {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd cov(2, 2);
  cov << 1, 1, 1, 2;
  return GaussianJoint::make(mean, cov, Layout::coupling(1));
}

}  // namespace

TEST_CASE("odd causal: fixed point when prev is causal with U-marginal mu") {
  const auto inst = testing::t2_instance();
  const GaussianJoint out = odd_projection_causal(inst.gamma, inst.mu);
  CHECK(joint_distance(out, inst.gamma) < 1e-10);
}

TEST_CASE("odd causal: T=1 swaps the U-marginal and keeps the y-conditional") {
  const GaussianJoint prev = additive_t1_joint();
  const GaussianJoint mu = GaussianJoint::make(
      Eigen::VectorXd::Constant(1, 2.0), Eigen::MatrixXd::Ones(1, 1),
      Layout::marginal(Role::Input, 1));
  const GaussianJoint out = odd_projection_causal(prev, mu);
  CHECK(out.mean(0) == doctest::Approx(2.0));
  CHECK(out.mean(1) == doctest::Approx(2.0));
  CHECK(out.cov(0, 0) == doctest::Approx(1.0));
  CHECK(out.cov(0, 1) == doctest::Approx(1.0));
  CHECK(out.cov(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("odd causal matches the direct parametric KL minimizer (T=2)") {
  const auto inst = testing::t2_instance();
  // prev from the state-space coefficients but with a mismatched U-marginal,
  // so the projection has real work to do.
  const GaussianJoint prev_mu = GaussianJoint::make(
      Eigen::VectorXd::Zero(2),
      (Eigen::MatrixXd(2, 2) << 1.0, -0.3, -0.3, 0.8).finished(),
      Layout::marginal(Role::Input, 2));
  StateSpaceSpec ss;
  ss.T = 2;
  const GaussianJoint prev = reference_from_state_space(ss, prev_mu);

  const GaussianJoint fast = odd_projection_causal(prev, inst.mu);
  const GaussianJoint oracle = testing::minimize_kl_odd_causal(prev, inst.mu);
  CHECK(joint_distance(fast, oracle) < 1e-6);
}

TEST_CASE("odd noncausal: fixed point and product-coupling cases") {
  const auto inst = testing::t2_instance();
  CHECK(joint_distance(odd_projection_noncausal(inst.gamma, inst.mu), inst.gamma) < 1e-10);

  // Product prev: replacing the U-marginal keeps independence.
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(4, 4);
  const GaussianJoint prev =
      GaussianJoint::make(Eigen::VectorXd::Zero(4), cov, Layout::coupling(2));
  const GaussianJoint out = odd_projection_noncausal(prev, inst.mu);
  CHECK((out.cov.topLeftCorner(2, 2) - inst.mu.cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.cov.topRightCorner(2, 2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((out.cov.bottomRightCorner(2, 2) - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("odd noncausal matches the direct parametric KL minimizer (T=2)") {
  const auto inst = testing::t2_instance();
  const GaussianJoint prev = testing::random_coupling(2, 404);
  const GaussianJoint fast = odd_projection_noncausal(prev, inst.mu);
  const GaussianJoint oracle = testing::minimize_kl_odd_noncausal(prev, inst.mu);
  CHECK(joint_distance(fast, oracle) < 1e-6);
}

TEST_CASE("even projection: fixed point, hand value, product case") {
  const auto inst = testing::t2_instance();
  const GaussianJoint nu_prev = marginal_of(inst.gamma, Role::Output);
  CHECK(joint_distance(even_projection(inst.gamma, nu_prev), inst.gamma) < 1e-10);

  // T=1 hand Gaussian algebra: K_{u|y} = 0.5, Sigma_{u|y} = 0.5.
  const GaussianJoint prev = additive_t1_joint();
  const GaussianJoint nu = GaussianJoint::make(
      Eigen::VectorXd::Constant(1, 1.0), Eigen::MatrixXd::Constant(1, 1, 2.0),
      Layout::marginal(Role::Output, 1));
  const GaussianJoint out = even_projection(prev, nu);
  CHECK(out.mean(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.mean(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.cov(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.cov(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.cov(1, 1) == doctest::Approx(2.0).epsilon(1e-12));

  // Product prev: conditional constant in y, so the output is mu x nu.
  Eigen::MatrixXd pcov = Eigen::MatrixXd::Identity(4, 4);
  pcov(0, 1) = pcov(1, 0) = 0.4;  // structure inside the U block only
  const GaussianJoint product =
      GaussianJoint::make(Eigen::VectorXd::Zero(4), pcov, Layout::coupling(2));
  const GaussianJoint nu2 = testing::random_marginal(Role::Output, 2, 17);
  const GaussianJoint out2 = even_projection(product, nu2);
  CHECK(out2.cov.topRightCorner(2, 2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((out2.cov.bottomRightCorner(2, 2) - nu2.cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((out2.cov.topLeftCorner(2, 2) - pcov.topLeftCorner(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection invariants on randomized instances") {
  int checked = 0;
  for (unsigned seed = 0; seed < 34; ++seed) {
    const int T = 2 + static_cast<int>(seed % 3);
    const GaussianJoint prev = testing::random_coupling(T, 7000 + seed);
    const GaussianJoint mu = testing::random_marginal(Role::Input, T, 8000 + seed);
    const GaussianJoint nu = testing::random_marginal(Role::Output, T, 9000 + seed);

    const GaussianJoint odd = odd_projection_causal(prev, mu);
    CHECK(joint_distance(marginal_of(odd, Role::Input), mu) < 1e-9);
    CHECK(check_causality(odd, 1e-8).pass);

    const GaussianJoint even = even_projection(prev, nu);
    CHECK(joint_distance(marginal_of(even, Role::Output), nu) < 1e-9);

    const GaussianJoint odd_nc = odd_projection_noncausal(prev, mu);
    CHECK(joint_distance(marginal_of(odd_nc, Role::Input), mu) < 1e-9);
    ++checked;
  }
  CHECK(checked == 34);
}

TEST_CASE("stable precision form equals the literal closed-form update") {
  int used = 0;
  for (unsigned seed = 0; used < 10 && seed < 60; ++seed) {
    const int T = 2 + static_cast<int>(seed % 3);
    const GaussianJoint prev = testing::random_coupling(T, 100 + seed);
    const GaussianJoint mu = testing::random_marginal(Role::Input, T, 200 + seed);
    const auto literal = testing::odd_projection_literal(prev, mu);
    if (literal.min_beta <= 1e-6) continue;  // literal form needs beta away from 0
    const GaussianJoint stable = odd_projection_causal(prev, mu);
    CHECK(joint_distance(stable, literal.coupling) < 1e-9);
    ++used;
  }
  CHECK(used == 10);
}

TEST_CASE("run: double fixed point converges in one sweep") {
  const auto inst = testing::t2_instance();
  const GaussianJoint mu = marginal_of(inst.gamma, Role::Input);
  const GaussianJoint nu = marginal_of(inst.gamma, Role::Output);
  const SinkhornResult res = run(inst.gamma, mu, nu, SinkhornSettings{});
  CHECK(res.converged);
  CHECK(res.sweeps == 1);
  CHECK(joint_distance(res.coupling, inst.gamma) < 1e-9);
}

TEST_CASE("run: T=2 instance matches the direct bridge minimizers") {
  const auto inst = testing::t2_instance();
  SinkhornSettings settings;
  settings.tol = 1e-12;
  settings.max_sweeps = 2000;

  const SinkhornResult causal = run(inst.gamma, inst.mu, inst.nu, settings);
  CHECK(causal.converged);
  const GaussianJoint oracle_c =
      testing::minimize_kl_causal_bridge(inst.gamma, inst.mu, inst.nu);
  CHECK(joint_distance(causal.coupling, oracle_c) < 1e-5);

  settings.mode = Mode::NonCausal;
  const SinkhornResult noncausal = run(inst.gamma, inst.mu, inst.nu, settings);
  CHECK(noncausal.converged);
  const GaussianJoint oracle_n =
      testing::minimize_kl_noncausal_bridge(inst.gamma, inst.mu, inst.nu);
  CHECK(joint_distance(noncausal.coupling, oracle_n) < 1e-5);
}

TEST_CASE("run: converged iterate is a fixed point of one more sweep") {
  const auto inst = testing::t2_instance();
  SinkhornSettings settings;
  const SinkhornResult res = run(inst.gamma, inst.mu, inst.nu, settings);
  CHECK(res.converged);
  const GaussianJoint again =
      even_projection(odd_projection_causal(res.coupling, inst.mu), inst.nu);
  CHECK(joint_distance(again, res.coupling) < settings.tol);
}

TEST_CASE("run: causal and noncausal coincide at T=1") {
  const GaussianJoint gamma = additive_t1_joint();
  const GaussianJoint mu = GaussianJoint::make(
      Eigen::VectorXd::Constant(1, 0.7), Eigen::MatrixXd::Constant(1, 1, 1.3),
      Layout::marginal(Role::Input, 1));
  const GaussianJoint nu = GaussianJoint::make(
      Eigen::VectorXd::Constant(1, -0.2), Eigen::MatrixXd::Constant(1, 1, 0.9),
      Layout::marginal(Role::Output, 1));
  SinkhornSettings settings;
  settings.tol = 1e-10;
  const SinkhornResult a = run(gamma, mu, nu, settings);
  settings.mode = Mode::NonCausal;
  const SinkhornResult b = run(gamma, mu, nu, settings);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(joint_distance(a.coupling, b.coupling) < 1e-9);
}

TEST_CASE("run: deterministic history across repeated executions") {
  const auto inst = testing::t2_instance();
  const SinkhornResult a = run(inst.gamma, inst.mu, inst.nu, SinkhornSettings{});
  const SinkhornResult b = run(inst.gamma, inst.mu, inst.nu, SinkhornSettings{});
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    CHECK(a.history[i].distance == b.history[i].distance);
    CHECK(a.history[i].kl_to_reference == b.history[i].kl_to_reference);
  }
  CHECK(joint_distance(a.coupling, b.coupling) == 0.0);
}

TEST_CASE("projection steps satisfy the Pythagorean inequality") {
  const auto inst = testing::t2_instance();

  // Half-step sequence rho0 = gamma, odd, even, odd, even, ...
  std::vector<GaussianJoint> rho{inst.gamma};
  for (int k = 0; k < 6; ++k) {
    const GaussianJoint& cur = rho.back();
    rho.push_back(k % 2 == 0 ? odd_projection_causal(cur, inst.mu)
                             : even_projection(cur, inst.nu));
  }
  // For the projection rho[k+1] of rho[k] onto a set S and the next iterate
  // q = rho[k+3] that lands back in S:
  // D(q, rho[k]) >= D(q, rho[k+1]) + D(rho[k+1], rho[k]) - 1e-6.
  for (std::size_t k = 0; k + 3 < rho.size(); ++k) {
    const double lhs = kl_divergence(rho[k + 3], rho[k]);
    const double rhs =
        kl_divergence(rho[k + 3], rho[k + 1]) + kl_divergence(rho[k + 1], rho[k]);
    CHECK(lhs >= rhs - 1e-6);
  }
}

TEST_CASE("odd causal: degenerate mu raises") {
  const GaussianJoint prev = testing::random_coupling(2, 31);
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 1.0, 1.0, 1.0;
  const GaussianJoint mu =
      GaussianJoint::make(Eigen::VectorXd::Zero(2), cov, Layout::marginal(Role::Input, 2));
  CHECK_THROWS_AS(odd_projection_causal(prev, mu), DegenerateMarginal);
}
