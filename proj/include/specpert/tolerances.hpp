#pragma once

#include <algorithm>

#include <Eigen/Core>

namespace specpert {

/// Numerical tolerances. Every threshold is multiplied by `scale`, which the
/// CLI exposes as --tol-scale.
struct Tolerances {
  double scale = 1.0;
  /// Per-dimension base for hermiticity, projection and eigen residual checks.
  double base = 1e-10;
  /// ||PVP||, ||P'VP'|| allowance relative to ||V||, per dimension.
  double offdiag = 1e-10;
  /// Slack when comparing a measured value against a claimed bound.
  double report = 1e-9;
  /// Below this (relative) gap the arctan(+inf) = pi/2 branch is taken.
  double conv = 1e-14;

  double herm(Eigen::Index dim) const { return scale * base * static_cast<double>(dim); }
  double proj(Eigen::Index dim) const { return scale * base * static_cast<double>(dim); }
  double eig(Eigen::Index dim, double norm) const {
    return scale * base * static_cast<double>(dim) * norm;
  }
  double off_diagonal(Eigen::Index dim) const {
    return scale * offdiag * static_cast<double>(dim);
  }
  double reporting() const { return scale * report; }
  double convention(double magnitude) const {
    return scale * conv * std::max(1.0, magnitude);
  }
};

}  // namespace specpert
