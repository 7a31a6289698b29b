#pragma once

// Independent reference computations used only by tests. None of these call
// into the library routine they check.

#include "snum/hilbert.hpp"
#include "snum/john.hpp"
#include "snum/step_function.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Canonical p/q; the two-argument mpq constructor does not reduce.
inline snum::Rational ratio(long p, long q)
{
    snum::Rational r(p, q);
    r.canonicalize();
    return r;
}

// Lorentz norm through the decreasing rearrangement,
// (int_0^1 (t^{1/p} f*(t))^q dt/t)^{1/q}. With f* = v_i on [M_{i-1}, M_i)
// the integral is sum v_i^q (p/q)(M_i^{q/p} - M_{i-1}^{q/p}).
inline double lorentz_rearrangement(std::vector<std::pair<double, double>> vm, double p, double q)
{
    std::sort(vm.begin(), vm.end(), [](auto a, auto b) { return std::abs(a.first) > std::abs(b.first); });
    double acc = 0.0, M = 0.0;
    for (auto [v, m] : vm) {
        if (v == 0.0 || m == 0.0) continue;
        const double next = M + m;
        acc += std::pow(std::abs(v), q) * (p / q) * (std::pow(next, q / p) - std::pow(M, q / p));
        M = next;
    }
    return std::pow(acc, 1.0 / q);
}

// Midpoint quadrature of p int_0^max mu(s)^{q/p} s^{q-1} ds.
inline double lorentz_quadrature(const std::vector<std::pair<double, double>>& vm, double p, double q, int steps = 200000)
{
    double top = 0.0;
    for (auto [v, m] : vm) top = std::max(top, std::abs(v));
    if (top == 0.0) return 0.0;
    const double h = top / steps;
    double acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double s = (i + 0.5) * h;
        double mu = 0.0;
        for (auto [v, m] : vm)
            if (std::abs(v) > s) mu += m;
        acc += std::pow(mu, q / p) * std::pow(s, q - 1.0) * h;
    }
    return std::pow(p * acc, 1.0 / q);
}

inline std::vector<std::pair<double, double>> pieces(const snum::StepFunction<double>& f)
{
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < f.pieces(); ++i) out.emplace_back(f.values()[i], f.breakpoints()[i + 1] - f.breakpoints()[i]);
    return out;
}

// int_0^t f by summing pieces.
template <class T>
T integrate_to(const snum::StepFunction<T>& f, const T& t)
{
    T acc = 0;
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        const T a = f.breakpoints()[i];
        const T b = std::min<T>(f.breakpoints()[i + 1], t);
        if (b > a) acc += f.values()[i] * (b - a);
    }
    return acc;
}

// Classic 2-d Hilbert curve: position d in [0, n^2) to cell (x, y).
inline std::pair<std::uint32_t, std::uint32_t> hilbert_d2xy(std::uint32_t n, std::uint32_t d)
{
    std::uint32_t x = 0, y = 0, t = d;
    for (std::uint32_t s = 1; s < n; s *= 2) {
        const std::uint32_t rx = 1 & (t / 2);
        const std::uint32_t ry = 1 & (t ^ rx);
        if (ry == 0) {
            if (rx == 1) {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
    }
    return {x, y};
}

// dist(x, boundary of the cube union) by scanning every non-member cell.
inline double boundary_distance(const snum::CubeUnion& omega, const std::vector<double>& x)
{
    if (!omega.contains(x)) return 0.0;
    const int d = omega.dim();
    const int k = omega.order();
    const std::uint32_t side = 1u << k;
    const double h = 1.0 / side;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i) best = std::min({best, x[i], 1.0 - x[i]});
    const auto& o = omega.ordering();
    for (snum::CurveIndex t = 1; t <= o.size(); ++t) {
        if (t >= omega.first() && t <= omega.last()) continue;
        const auto c = o.coords(t);
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            const double lo = c[i] * h, hi = lo + h;
            const double g = x[i] < lo ? lo - x[i] : (x[i] > hi ? x[i] - hi : 0.0);
            s += g * g;
        }
        best = std::min(best, std::sqrt(s));
    }
    return best;
}

// min over all increasing index sets of ||E c||_inf subject to (E c)(t_j) = (-1)^j.
inline double zigzag_brute_force(const Eigen::MatrixXd& E)
{
    const auto N = E.rows();
    const auto n = E.cols();
    std::vector<int> mask(N, 0);
    std::fill(mask.end() - n, mask.end(), 1);
    double best = std::numeric_limits<double>::infinity();
    do {
        std::vector<Eigen::Index> t;
        for (Eigen::Index i = 0; i < N; ++i)
            if (mask[i]) t.push_back(i);
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd s(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            M.row(j) = E.row(t[j]);
            s(j) = j % 2 == 0 ? -1.0 : 1.0;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible()) continue;
        best = std::min(best, (E * lu.solve(s)).cwiseAbs().maxCoeff());
    } while (std::next_permutation(mask.begin(), mask.end()));
    return best;
}

// Hand-rolled generators.
inline snum::StepFunction<double> random_step(std::mt19937_64& rng, std::size_t max_pieces = 12)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t m = 1 + rng() % max_pieces;
    std::vector<double> bp{0.0, 1.0};
    for (std::size_t i = 1; i < m; ++i) bp.push_back(unit(rng));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> v(bp.size() - 1);
    for (auto& x : v) x = 4.0 * unit(rng) - 2.0;
    return {bp, v};
}

inline snum::StepFunction<snum::Rational> random_exact_step(std::mt19937_64& rng, long denominator = 64)
{
    std::vector<long> cuts{0, denominator};
    for (int i = 0; i < 5; ++i) cuts.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(denominator)));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<snum::Rational> bp, v;
    for (long c : cuts) bp.push_back(ratio(c, denominator));
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) v.push_back(ratio(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3)));
    return {bp, v};
}

}  // namespace oracle
