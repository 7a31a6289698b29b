#pragma once

#include <Eigen/Dense>

#include <cstddef>

namespace snum {

struct LinearProgramResult {
    enum class Status { optimal, unbounded, iteration_limit };
    Status status = Status::optimal;
    double value = 0.0;
    Eigen::VectorXd x;
    std::size_t pivots = 0;
};

// max c.x  s.t.  A x <= b, x >= 0, with b >= 0 so that x = 0 is feasible.
// Dense tableau simplex with Bland's rule (no cycling on degenerate vertices).
LinearProgramResult maximize_from_origin(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                         std::size_t max_pivots = 200000);

struct ChebyshevDistance {
    double distance = 0.0;
    // Dual certificate: basis^T w = 0, ||w||_1 <= 1, w.target = distance.
    Eigen::VectorXd weights;
    double residual = 0.0;
};

// min over c of max_i |target_i - (basis c)_i|, solved through its dual.
// An empty basis gives max_i |target_i|.
ChebyshevDistance chebyshev_distance(const Eigen::MatrixXd& basis, const Eigen::VectorXd& target);

}  // namespace snum
