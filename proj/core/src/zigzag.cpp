#include "snum/zigzag.hpp"

#include "snum/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace snum {

std::size_t binomial_saturating(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r (n-k+i) / i is an integer and i/g is coprime to r/g, so i/g divides n-k+i.
        const std::size_t g = std::gcd(r, i);
        const std::size_t a = r / g;
        const std::size_t b = (n - k + i) / (i / g);
        if (b != 0 && a > std::numeric_limits<std::size_t>::max() / b) return std::numeric_limits<std::size_t>::max();
        r = a * b;
    }
    return r;
}

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

struct Evaluator {
    const Eigen::MatrixXd& E;
    Eigen::VectorXd signs;
    Eigen::MatrixXd m;
    std::size_t evaluated = 0;

    explicit Evaluator(const Eigen::MatrixXd& e) : E(e), signs(e.cols()), m(e.cols(), e.cols())
    {
        for (Eigen::Index j = 0; j < signs.size(); ++j) signs(j) = (j % 2 == 0) ? -1.0 : 1.0;
    }

    // ||g||_inf for the interpolant on T, infinity if M_T is singular.
    double value(const std::vector<std::size_t>& t, Eigen::VectorXd* coeff = nullptr)
    {
        ++evaluated;
        for (std::size_t r = 0; r < t.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = E.row(static_cast<Eigen::Index>(t[r]));
        Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
        if (!lu.isInvertible()) return infinity;
        Eigen::VectorXd c = lu.solve(signs);
        if (coeff) *coeff = c;
        return (E * c).cwiseAbs().maxCoeff();
    }
};

bool next_combination(std::vector<std::size_t>& t, std::size_t n_rows)
{
    const std::size_t k = t.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (t[i] < n_rows - k + i) {
            ++t[i];
            for (std::size_t j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Steepest single-index exchange from `start`.
double descend(Evaluator& ev, std::vector<std::size_t>& t, std::size_t n_rows, std::size_t max_sweeps)
{
    double cur = ev.value(t);
    std::vector<char> used(n_rows, 0);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (cur <= 1.0 + 1e-12) break;
        std::fill(used.begin(), used.end(), 0);
        for (auto x : t) used[x] = 1;
        double best = cur;
        std::vector<std::size_t> best_t;
        std::vector<std::size_t> cand(t.size());
        for (std::size_t p = 0; p < t.size(); ++p) {
            for (std::size_t q = 0; q < n_rows; ++q) {
                if (used[q]) continue;
                cand = t;
                cand[p] = q;
                std::sort(cand.begin(), cand.end());
                const double v = ev.value(cand);
                if (v < best || (v == best && !best_t.empty() && cand < best_t)) {
                    best = v;
                    best_t = cand;
                }
            }
        }
        if (best_t.empty() || !(best < cur)) break;
        t = best_t;
        cur = best;
    }
    return cur;
}

}  // namespace

ZigzagWitness zigzag_find(const Eigen::MatrixXd& E, const ZigzagOptions& options)
{
    const auto n_rows = static_cast<std::size_t>(E.rows());
    const auto n = static_cast<std::size_t>(E.cols());
    if (n < 1) throw DomainError("zigzag search needs a subspace of dimension >= 1");
    if (n > n_rows) throw DomainError("zigzag search needs dim E <= number of sample points");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(E);
    if (static_cast<std::size_t>(qr.rank()) < n) throw DomainError("degenerate basis: sampled columns are dependent");

    Evaluator ev(E);
    ZigzagWitness w;
    std::vector<std::size_t> best_t;
    double best = infinity;

    if (binomial_saturating(n_rows, n) <= options.exhaustive_limit) {
        w.exhaustive = true;
        std::vector<std::size_t> t(n);
        std::iota(t.begin(), t.end(), 0);
        do {
            const double v = ev.value(t);
            if (v < best) {
                best = v;
                best_t = t;
            }
        } while (next_combination(t, n_rows));
    } else {
        std::mt19937_64 rng(options.seed);
        for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
            std::vector<std::size_t> t(n);
            if (r == 0) {
                for (std::size_t j = 0; j < n; ++j) t[j] = (2 * j + 1) * n_rows / (2 * n);
            } else {
                std::vector<std::size_t> all(n_rows);
                std::iota(all.begin(), all.end(), 0);
                std::shuffle(all.begin(), all.end(), rng);
                std::copy_n(all.begin(), n, t.begin());
                std::sort(t.begin(), t.end());
            }
            const double v = descend(ev, t, n_rows, options.max_sweeps);
            if (v < best || (v == best && t < best_t)) {
                best = v;
                best_t = t;
            }
            if (best <= 1.0 + options.epsilon) break;
        }
    }

    w.index_sets_evaluated = ev.evaluated;
    if (best_t.empty() || best == infinity) return w;
    w.indices = best_t;
    ev.value(best_t, &w.coefficients);
    w.values = E * w.coefficients;
    w.sup_norm_value = w.values.cwiseAbs().maxCoeff();
    for (std::size_t j = 0; j < n; ++j)
        w.interpolation_residual = std::max(w.interpolation_residual,
                                            std::abs(w.values(static_cast<Eigen::Index>(best_t[j])) - ev.signs(static_cast<Eigen::Index>(j))));
    w.certified = w.sup_norm_value <= 1.0 + options.epsilon && w.interpolation_residual <= 1e-9;
    return w;
}

}  // namespace snum
