#include "ecot/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ecot/errors.hpp"

namespace ecot {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return std::string(buf);
}

namespace {

void write_row(std::ofstream& out, const Eigen::VectorXd& row) {
  for (Eigen::Index j = 0; j < row.size(); ++j) {
    if (j) out << ',';
    out << format_double(row(j));
  }
  out << '\n';
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) write_row(out, m.row(i).transpose());
}

void write_coupling_csv(const std::string& path, const GaussianJoint& joint) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  write_row(out, joint.mean);
  for (Eigen::Index i = 0; i < joint.cov.rows(); ++i)
    write_row(out, joint.cov.row(i).transpose());
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open for reading: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        row.push_back(v);
        (void)pos;
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header line
      throw ParseError("non-numeric row in " + path);
    }
    if (width == 0) width = row.size();
    if (row.size() != width) throw ShapeMismatch("ragged rows in " + path);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ecot
