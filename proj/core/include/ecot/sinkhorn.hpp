#pragma once

#include <vector>

#include "ecot/gaussian.hpp"

namespace ecot {

enum class Mode { Causal, NonCausal };

struct SinkhornSettings {
  double tol = 1e-6;
  int max_sweeps = 500;
  Mode mode = Mode::Causal;
  double delta_floor = 1e-14;  // beta_t at or below this is treated as exactly 0

  void validate() const;
};

struct SweepRecord {
  int sweep = 0;
  double distance = 0.0;
  double kl_to_reference = 0.0;
  double seconds = 0.0;
};

struct SinkhornResult {
  GaussianJoint coupling;
  int sweeps = 0;
  bool converged = false;
  std::vector<SweepRecord> history;
};

/// Causal projection onto couplings with U-marginal mu: u-conditionals come
/// from mu's own disintegration (zero cross-coefficients), y-conditionals from
/// the backward recursion t = T..1 in the stable precision form
///   var_y = var_prev / (1 + var_prev * beta_t),  alpha_t = 1 / (1 + var_prev * beta_t),
/// with beta_t = delta_t' M_t delta_t and M_t the inverse of prev's
/// future-given-past covariance.
GaussianJoint odd_projection_causal(const GaussianJoint& prev, const GaussianJoint& mu,
                                    double delta_floor = 1e-14);

/// Marginal-only projection: keep prev's conditional of Y given U, replace the
/// U-marginal with mu.
GaussianJoint odd_projection_noncausal(const GaussianJoint& prev, const GaussianJoint& mu);

/// Projection onto couplings with Y-marginal nu: keep prev's conditional of U
/// given Y, replace the Y-marginal with nu.
GaussianJoint even_projection(const GaussianJoint& prev, const GaussianJoint& nu);

/// Alternating projection loop starting from the reference coupling. One sweep
/// is odd followed by even; convergence when the max-abs change over a full
/// sweep drops below tol. Deterministic.
SinkhornResult run(const GaussianJoint& reference, const GaussianJoint& mu,
                   const GaussianJoint& nu, const SinkhornSettings& settings);

}  // namespace ecot
