#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ecot/gaussian.hpp"

namespace ecot {

/// 17-significant-digit decimal rendering so that parse(print(x)) == x for
/// doubles.
std::string format_double(double x);

/// Comma-separated rows, one matrix row per line.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

/// Mean as the first row, covariance rows after it.
void write_coupling_csv(const std::string& path, const GaussianJoint& joint);

/// Parse a numeric CSV; lines whose first field is not a number are skipped
/// (headers). Throws ParseError on unreadable files, ShapeMismatch on ragged
/// rows.
std::vector<std::vector<double>> read_csv(const std::string& path);

}  // namespace ecot
