#include <doctest.h>

#include "ecot/errors.hpp"
#include "ecot/gaussian.hpp"
#include "support/test_utils.hpp"

using namespace ecot;

namespace {

GaussianJoint joint2(double m0, double m1, double c00, double c01, double c11) {
  Eigen::VectorXd mean(2);
  mean << m0, m1;
  Eigen::MatrixXd cov(2, 2);
  cov << c00, c01, c01, c11;
  return GaussianJoint::make(mean, cov, Layout::coupling(1));
}

}  // namespace

TEST_CASE("condition: textbook bivariate case") {
  const GaussianJoint j = joint2(0, 0, 1, 0.5, 1);
  const ConditionalGaussian c = condition(j, {0}, {1});
  CHECK(c.coeff(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.intercept(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.cov(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("condition: independence gives zero coefficient") {
  const GaussianJoint j = joint2(0, 0, 1, 0, 1);
  const ConditionalGaussian c = condition(j, {0}, {1});
  CHECK(c.coeff(0, 0) == doctest::Approx(0.0));
  CHECK(c.cov(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("condition: recombination rebuilds the joint") {
  // Law of total mean / covariance over a random 6x6 PD instance.
  const GaussianJoint j = testing::random_joint(6, Layout::coupling(3), 42);
  const std::vector<int> given{0, 1, 2};
  const std::vector<int> target{3, 4, 5};
  const ConditionalGaussian c = condition(j, given, target);
  const GaussianJoint g = marginalize(j, given);

  Eigen::VectorXd m_t = c.coeff * g.mean + c.intercept;
  Eigen::MatrixXd s_t = c.cov + c.coeff * g.cov * c.coeff.transpose();
  Eigen::MatrixXd s_tg = c.coeff * g.cov;
  for (int i = 0; i < 3; ++i) {
    CHECK(m_t(i) == doctest::Approx(j.mean(3 + i)).epsilon(1e-9));
    for (int k = 0; k < 3; ++k) {
      CHECK(s_t(i, k) == doctest::Approx(j.cov(3 + i, 3 + k)).epsilon(1e-9));
      CHECK(s_tg(i, k) == doctest::Approx(j.cov(3 + i, k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("condition: singular given block raises") {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd cov(2, 2);
  cov << 0.0, 0.0, 0.0, 1.0;
  const GaussianJoint j = GaussianJoint::make(mean, cov, Layout::coupling(1));
  CHECK_THROWS_AS(condition(j, {0}, {1}), SingularConditioningBlock);
}

TEST_CASE("condition: empty given set raises") {
  const GaussianJoint j = joint2(0, 0, 1, 0, 1);
  CHECK_THROWS_AS(condition(j, {}, {1}), EmptyIndexSet);
}

TEST_CASE("marginalize: diagonal example and identity") {
  Eigen::VectorXd mean(2);
  mean << 1, 2;
  Eigen::MatrixXd cov = Eigen::Vector2d(3, 4).asDiagonal();
  const GaussianJoint j = GaussianJoint::make(mean, cov, Layout::coupling(1));

  const GaussianJoint m = marginalize(j, {1});
  CHECK(m.mean(0) == doctest::Approx(2.0));
  CHECK(m.cov(0, 0) == doctest::Approx(4.0));

  const GaussianJoint all = marginalize(j, {0, 1});
  CHECK(joint_distance(all, j) == doctest::Approx(0.0));

  CHECK_THROWS_AS(marginalize(j, {}), EmptyIndexSet);
}

TEST_CASE("kl_divergence: closed-form scalar values") {
  const GaussianJoint p = joint2(0, 0, 1, 0, 1);
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0));

  Eigen::VectorXd m0 = Eigen::VectorXd::Zero(1), m1 = Eigen::VectorXd::Ones(1);
  Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  const Layout lay = Layout::marginal(Role::Input, 1);
  const GaussianJoint a = GaussianJoint::make(m0, one, lay);
  const GaussianJoint b = GaussianJoint::make(m1, one, lay);
  CHECK(kl_divergence(a, b) == doctest::Approx(0.5).epsilon(1e-12));

  const GaussianJoint wide = GaussianJoint::make(m0, 2.0 * one, lay);
  CHECK(kl_divergence(wide, a) == doctest::Approx(0.5 * (1.0 - std::log(2.0))).epsilon(1e-9));
}

TEST_CASE("kl_divergence: nonnegative and zero iff equal on random instances") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const GaussianJoint p = testing::random_joint(4, Layout::coupling(2), seed);
    const GaussianJoint q = testing::random_joint(4, Layout::coupling(2), seed + 100);
    const double kl = kl_divergence(p, q);
    CHECK(kl >= 0.0);
    if (joint_distance(p, q) < 1e-9) CHECK(kl == doctest::Approx(0.0));
    if (kl == 0.0) CHECK(joint_distance(p, q) < 1e-9);
    CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
  }
}

TEST_CASE("joint_distance: max-abs semantics and symmetry") {
  const GaussianJoint p = joint2(0, 0, 1, 0.5, 1);
  CHECK(joint_distance(p, p) == doctest::Approx(0.0));

  GaussianJoint q = p;
  q.mean(0) += 1e-3;
  CHECK(joint_distance(p, q) == doctest::Approx(1e-3));

  for (unsigned seed = 0; seed < 5; ++seed) {
    const GaussianJoint a = testing::random_joint(4, Layout::coupling(2), seed);
    const GaussianJoint b = testing::random_joint(4, Layout::coupling(2), seed + 50);
    CHECK(joint_distance(a, b) == doctest::Approx(joint_distance(b, a)));
  }

  const GaussianJoint other = testing::random_joint(6, Layout::coupling(3), 7);
  CHECK_THROWS_AS(joint_distance(p, other), DimensionMismatch);
}

TEST_CASE("GaussianJoint::make rejects asymmetric and indefinite matrices") {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(GaussianJoint::make(mean, asym, Layout::coupling(1)), DimensionMismatch);

  Eigen::MatrixXd indef(2, 2);
  indef << 1, 2, 2, 1;
  CHECK_THROWS_AS(GaussianJoint::make(mean, indef, Layout::coupling(1)), DegenerateMarginal);
}
