#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace snum {

struct ZigzagOptions {
    double epsilon = 0.05;
    // Exhaustive search when C(N, n) is at most this.
    std::size_t exhaustive_limit = 100000;
    std::size_t restarts = 24;
    std::size_t max_sweeps = 400;
    std::uint64_t seed = 0;
};

// g = E c with g(t_j) = (-1)^j at rows t_1 < ... < t_n (0-based row indices).
struct ZigzagWitness {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd values;
    std::vector<std::size_t> indices;
    double sup_norm_value = 0.0;
    // Largest |g(t_j) - (-1)^j|.
    double interpolation_residual = 0.0;
    bool certified = false;
    bool exhaustive = false;
    std::size_t index_sets_evaluated = 0;
};

// E is N x n: column i holds the i-th basis element sampled at N points.
// For each increasing index set T the interpolation conditions fix g, so the
// minimax problem over T reduces to one solve; the search minimises ||g||_inf
// over T, exhaustively (lexicographically first optimum) when C(N, n) allows,
// otherwise by single-index exchange descent with seeded restarts. Never
// returns an uncertified witness as certified. Throws DomainError if n > N or
// the columns are dependent.
ZigzagWitness zigzag_find(const Eigen::MatrixXd& E, const ZigzagOptions& options = {});

// Binomial coefficient saturating at SIZE_MAX.
std::size_t binomial_saturating(std::size_t n, std::size_t k);

}  // namespace snum
