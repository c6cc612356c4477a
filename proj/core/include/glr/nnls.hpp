#pragma once

#include <Eigen/Core>

namespace glr {

/// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iterations = 0);

}  // namespace glr
