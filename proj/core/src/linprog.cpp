#include "snum/linprog.hpp"

#include "snum/error.hpp"

#include <limits>

namespace snum {

LinearProgramResult maximize_from_origin(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                         std::size_t max_pivots)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index n = A.cols();
    if (b.size() != m || c.size() != n) throw DomainError("linear program dimensions disagree");
    if ((b.array() < 0.0).any()) throw PreconditionError("origin must be feasible (b >= 0)");
    constexpr double eps = 1e-12;

    // Columns: n structural, m slack, then the right-hand side.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
    t.block(0, 0, m, n) = A;
    t.block(0, n, m, m).setIdentity();
    t.block(0, n + m, m, 1) = b;
    t.block(m, 0, 1, n) = -c.transpose();
    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    LinearProgramResult result;
    for (;;) {
        Eigen::Index enter = -1;
        for (Eigen::Index j = 0; j < n + m; ++j)
            if (t(m, j) < -eps) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        if (result.pivots >= max_pivots) {
            result.status = LinearProgramResult::Status::iteration_limit;
            break;
        }
        Eigen::Index leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            if (t(i, enter) <= eps) continue;
            const double ratio = t(i, n + m) / t(i, enter);
            if (ratio < best - eps ||
                (ratio <= best + eps && leave >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                best = std::min(best, ratio);
                leave = i;
            }
        }
        if (leave < 0) {
            result.status = LinearProgramResult::Status::unbounded;
            break;
        }
        t.row(leave) /= t(leave, enter);
        for (Eigen::Index i = 0; i <= m; ++i)
            if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
        basis[static_cast<std::size_t>(leave)] = enter;
        ++result.pivots;
    }
    result.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n) result.x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
    result.value = c.dot(result.x);
    return result;
}

ChebyshevDistance chebyshev_distance(const Eigen::MatrixXd& basis, const Eigen::VectorXd& target)
{
    const Eigen::Index p = target.size();
    const Eigen::Index k = basis.cols();
    if (basis.rows() != p) throw DomainError("basis and target sample counts disagree");
    ChebyshevDistance out;
    if (k == 0) {
        Eigen::Index arg = 0;
        out.distance = target.cwiseAbs().maxCoeff(&arg);
        out.weights = Eigen::VectorXd::Zero(p);
        out.weights(arg) = target(arg) >= 0.0 ? 1.0 : -1.0;
        return out;
    }
    // w = w+ - w-; rows: B^T w <= 0, -B^T w <= 0, sum(w+ + w-) <= 1.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * k + 1, 2 * p);
    A.block(0, 0, k, p) = basis.transpose();
    A.block(0, p, k, p) = -basis.transpose();
    A.block(k, 0, k, p) = -basis.transpose();
    A.block(k, p, k, p) = basis.transpose();
    A.row(2 * k).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * k + 1);
    b(2 * k) = 1.0;
    Eigen::VectorXd c(2 * p);
    c << target, -target;
    const auto lp = maximize_from_origin(A, b, c);
    if (lp.status != LinearProgramResult::Status::optimal)
        throw ConstructionError("Chebyshev distance LP did not reach optimality");
    out.weights = lp.x.head(p) - lp.x.tail(p);
    out.distance = out.weights.dot(target);
    out.residual = (basis.transpose() * out.weights).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace snum
