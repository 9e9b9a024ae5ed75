#include "ecot/autoregressive.hpp"

#include <cmath>

#include "ecot/errors.hpp"

namespace ecot {

namespace {

// Interleaved coordinate order: g = 2(t-1) is u_t, g = 2t-1 is y_t.

struct ChainRow {
  Eigen::VectorXd coeff;  // over interleaved coords 0..g-1
  double intercept = 0.0;
  double var = 0.0;
};

// Interleaved-coefficient row of coordinate g, assembled from the AR step.
ChainRow chain_row(const AutoregressiveForm& ar, int g) {
  ChainRow row;
  row.coeff = Eigen::VectorXd::Zero(g);
  if (g % 2 == 0) {
    const auto& s = ar.u_steps[static_cast<std::size_t>(g / 2)];
    const int tm1 = g / 2;  // t - 1 earlier u's and y's
    for (int j = 0; j < tm1; ++j) {
      row.coeff(2 * j) = s.k_on_u(j);
      row.coeff(2 * j + 1) = s.k_on_y(j);
    }
    row.intercept = s.mean;
    row.var = s.var;
  } else {
    const auto& s = ar.y_steps[static_cast<std::size_t>((g - 1) / 2)];
    const int t = (g + 1) / 2;
    for (int j = 0; j < t; ++j) row.coeff(2 * j) = s.k_on_u(j);
    for (int j = 0; j < t - 1; ++j) row.coeff(2 * j + 1) = s.k_on_y(j);
    row.intercept = s.mean;
    row.var = s.var;
  }
  return row;
}

// Block-storage index of interleaved coordinate g for horizon T.
int block_index(int g, int T) { return (g % 2 == 0) ? g / 2 : T + (g - 1) / 2; }

}  // namespace

void AutoregressiveForm::validate() const {
  const int T = horizon();
  if (y_steps.size() != static_cast<std::size_t>(T))
    throw DimensionMismatch("autoregressive form has mismatched u/y step counts");
  for (int t = 1; t <= T; ++t) {
    const auto& u = u_steps[static_cast<std::size_t>(t - 1)];
    const auto& y = y_steps[static_cast<std::size_t>(t - 1)];
    if (u.k_on_u.size() != t - 1 || u.k_on_y.size() != t - 1)
      throw DimensionMismatch("u-step coefficient length mismatch");
    if (y.k_on_u.size() != t || y.k_on_y.size() != t - 1)
      throw DimensionMismatch("y-step coefficient length mismatch");
    if (u.var < 0.0 || y.var < 0.0)
      throw DegenerateMarginal("negative step variance in autoregressive form");
  }
}

AutoregressiveForm disintegrate(const GaussianJoint& joint) {
  if (!joint.is_coupling())
    throw DimensionMismatch("disintegrate requires a full coupling layout");
  const int T = joint.horizon();
  const std::vector<int> order = joint.layout.interleaved_order();

  const Eigen::VectorXd mean_int = detail::gather(joint.mean, order);
  const Eigen::MatrixXd cov_int = detail::gather(joint.cov, order, order);

  const std::vector<ChainStep> chain = sequential_regression(mean_int, cov_int);

  AutoregressiveForm ar;
  ar.u_steps.resize(static_cast<std::size_t>(T));
  ar.y_steps.resize(static_cast<std::size_t>(T));
  for (int t = 1; t <= T; ++t) {
    {
      const ChainStep& c = chain[static_cast<std::size_t>(2 * (t - 1))];
      auto& s = ar.u_steps[static_cast<std::size_t>(t - 1)];
      s.k_on_u.resize(t - 1);
      s.k_on_y.resize(t - 1);
      for (int j = 0; j < t - 1; ++j) {
        s.k_on_u(j) = c.coeff(2 * j);
        s.k_on_y(j) = c.coeff(2 * j + 1);
      }
      s.mean = c.intercept;
      s.var = c.var;
    }
    {
      const ChainStep& c = chain[static_cast<std::size_t>(2 * t - 1)];
      auto& s = ar.y_steps[static_cast<std::size_t>(t - 1)];
      s.k_on_u.resize(t);
      s.k_on_y.resize(t - 1);
      for (int j = 0; j < t; ++j) s.k_on_u(j) = c.coeff(2 * j);
      for (int j = 0; j < t - 1; ++j) s.k_on_y(j) = c.coeff(2 * j + 1);
      s.mean = c.intercept;
      s.var = c.var;
    }
  }
  return ar;
}

GaussianJoint recompose(const AutoregressiveForm& ar) {
  ar.validate();
  const int T = ar.horizon();
  const int d = 2 * T;

  // Accumulate each coordinate's loading on the independent step noises.
  Eigen::MatrixXd load = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd mean_int(d);
  for (int g = 0; g < d; ++g) {
    const ChainRow row = chain_row(ar, g);
    double m = row.intercept;
    for (int j = 0; j < g; ++j) {
      if (row.coeff(j) == 0.0) continue;
      load.row(g).head(j + 1) += row.coeff(j) * load.row(j).head(j + 1);
      m += row.coeff(j) * mean_int(j);
    }
    load(g, g) = std::sqrt(row.var);
    mean_int(g) = m;
  }
  const Eigen::MatrixXd cov_int = load * load.transpose();

  Eigen::VectorXd mean(d);
  Eigen::MatrixXd cov(d, d);
  for (int g = 0; g < d; ++g) {
    const int bi = block_index(g, T);
    mean(bi) = mean_int(g);
    for (int h = 0; h < d; ++h) cov(bi, block_index(h, T)) = cov_int(g, h);
  }
  return GaussianJoint::make(std::move(mean), std::move(cov), Layout::coupling(T));
}

ConditionalGaussian future_given_past(const AutoregressiveForm& ar, int t) {
  const int T = ar.horizon();
  if (t < 1 || t > T) throw StepOutOfRange("future_given_past step out of range");
  const int p = 2 * t;        // given coords (interleaved z_{1:t})
  const int f = 2 * (T - t);  // future coords

  // Forward composition over the future steps only; steps <= t are untouched.
  Eigen::MatrixXd coeff_int = Eigen::MatrixXd::Zero(f, p);
  Eigen::VectorXd icept_int = Eigen::VectorXd::Zero(f);
  Eigen::MatrixXd load = Eigen::MatrixXd::Zero(f, f);
  for (int s = 0; s < f; ++s) {
    const ChainRow row = chain_row(ar, p + s);
    coeff_int.row(s) = row.coeff.head(p);
    icept_int(s) = row.intercept;
    for (int j = 0; j < s; ++j) {
      const double c = row.coeff(p + j);
      if (c == 0.0) continue;
      coeff_int.row(s) += c * coeff_int.row(j);
      icept_int(s) += c * icept_int(j);
      load.row(s).head(j + 1) += c * load.row(j).head(j + 1);
    }
    load(s, s) = std::sqrt(row.var);
  }
  Eigen::MatrixXd cov_int = load * load.transpose();

  // Reorder: target rows to (u_{t+1:T}, y_{t+1:T}), given columns to (u_{1:t}, y_{1:t}).
  auto target_row = [&](int s_local) {  // block position of interleaved future coord
    return (s_local % 2 == 0) ? s_local / 2 : (T - t) + (s_local - 1) / 2;
  };
  auto given_col = [&](int j) { return (j % 2 == 0) ? j / 2 : t + (j - 1) / 2; };

  ConditionalGaussian out;
  out.coeff = Eigen::MatrixXd::Zero(f, p);
  out.intercept = Eigen::VectorXd::Zero(f);
  out.cov = Eigen::MatrixXd::Zero(f, f);
  for (int s = 0; s < f; ++s) {
    const int rs = target_row(s);
    out.intercept(rs) = icept_int(s);
    for (int j = 0; j < p; ++j) out.coeff(rs, given_col(j)) = coeff_int(s, j);
    for (int s2 = 0; s2 < f; ++s2) out.cov(rs, target_row(s2)) = cov_int(s, s2);
  }
  out.cov = 0.5 * (out.cov + out.cov.transpose());

  std::vector<Layout::Entry> ge, te;
  for (int s = 1; s <= t; ++s) ge.push_back({Role::Input, s});
  for (int s = 1; s <= t; ++s) ge.push_back({Role::Output, s});
  for (int s = t + 1; s <= T; ++s) te.push_back({Role::Input, s});
  for (int s = t + 1; s <= T; ++s) te.push_back({Role::Output, s});
  out.given_layout = Layout(std::move(ge));
  out.target_layout = Layout(std::move(te));
  return out;
}

}  // namespace ecot
