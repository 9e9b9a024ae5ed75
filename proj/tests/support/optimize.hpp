#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ecot::testing {

/// Nelder-Mead followed by a finite-difference Newton polish. Intended for
/// small, smooth test objectives where an independent minimizer is needed;
/// infeasible points should return a large value.
Eigen::VectorXd minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                         Eigen::VectorXd x0, double simplex_scale = 0.25,
                         int nm_iters = 4000, int newton_iters = 40);

}  // namespace ecot::testing
