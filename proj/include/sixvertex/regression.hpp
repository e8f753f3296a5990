#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "sixvertex/errors.hpp"

namespace sixvertex {

/// Least-squares coefficients for y ≈ Σ_j c_j·columns[j].
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                         const std::vector<double>& y) {
  const auto m = static_cast<Eigen::Index>(y.size());
  const auto p = static_cast<Eigen::Index>(columns.size());
  if (p == 0 || m < p) throw SizeError("least_squares: fewer rows than unknowns");
  Eigen::MatrixXd a(m, p);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    b(i) = y[i];
    for (Eigen::Index j = 0; j < p; ++j) {
      if (columns[j].size() != y.size()) throw SizeError("least_squares: ragged columns");
      a(i, j) = columns[j][i];
    }
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {c.data(), c.data() + p};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto c = least_squares({std::vector<double>(x.size(), 1.0), x}, y);
  return {c[1], c[0]};
}

/// Slope of log|y| against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || y[i] == 0) throw DomainError("loglog_slope: needs x > 0 and y != 0");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return fit_line(lx, ly).slope;
}

}  // namespace sixvertex
