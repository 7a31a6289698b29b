#include "doctest.h"
#include "oracles.hpp"

#include "snum/error.hpp"
#include "snum/linprog.hpp"
#include "snum/snumbers.hpp"
#include "snum/volterra.hpp"
#include "snum/zigzag.hpp"

#include <cmath>
#include <random>

using namespace snum;

TEST_CASE("Volterra of a dipole is a tent")
{
    const auto f = StepFunction<Rational>::indicator(Rational(0), Rational(1, 2), Rational(2)) -
                   StepFunction<Rational>::indicator(Rational(1, 2), Rational(1), Rational(2));
    const VolterraCurve<Rational> v(f);
    CHECK(v(Rational(1, 2)) == 1);
    CHECK(v(Rational(1)) == 0);
    CHECK(v(Rational(1, 4)) == Rational(1, 2));
    CHECK(v.sup_norm() == 1);
    CHECK(v.argmax_abs() == Rational(1, 2));
    CHECK(v.slopes() == f);
    CHECK(VolterraCurve<Rational>(StepFunction<Rational>()).sup_norm() == 0);
}

TEST_CASE("Volterra against direct integration")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        const auto f = oracle::random_exact_step(rng);
        const VolterraCurve<Rational> v(f);
        for (int s = 0; s <= 16; ++s) {
            const Rational x = oracle::ratio(s, 16);
            CHECK(v(x) == oracle::integrate_to(f, x));
        }
        const auto fd = to_double(f);
        const VolterraCurve<double> vd(fd);
        CHECK(vd(0.3) == doctest::Approx(oracle::integrate_to(fd, 0.3)));
    }
}

TEST_CASE("test functions of the Kolmogorov family")
{
    for (unsigned k = 1; k <= 12; ++k) {
        const auto f = kolmogorov_test_function(k);
        const VolterraCurve<Rational> v(f);
        CHECK(v(Rational(0)) == 0);
        CHECK(v(Rational(1) / Rational(mpz_class(1) << k)) == Rational(1, 2));
        CHECK(f.l1_norm() == 1);
        CHECK(f.integral() == 0);
    }
}

TEST_CASE("mean-zero projection")
{
    CHECK(mean_zero_project(StepFunction<Rational>::indicator(Rational(0), Rational(1))) == StepFunction<Rational>());
    const auto g = mean_zero_project(StepFunction<Rational>::indicator(Rational(0), Rational(1, 2)));
    CHECK(g(Rational(0)) == Rational(1, 2));
    CHECK(g(Rational(3, 4)) == Rational(-1, 2));
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) CHECK(MeanZeroTag{}.accepts(mean_zero_project(oracle::random_exact_step(rng))));
}

TEST_CASE("discrete operator norm")
{
    const auto r2 = operator_norm_discrete(2);
    CHECK(r2.value == Rational(1, 2));
    CHECK(r2.witness.l1_norm() == 1);
    CHECK(r2.witness.integral() == 0);
    CHECK(operator_norm_discrete(16).value == Rational(1, 2));
    for (std::size_t N : {3, 7, 32}) CHECK(operator_norm_discrete(N, DensityClass::nonnegative).value == 1);
    CHECK_THROWS_AS(operator_norm_discrete(1), DomainError);
}

TEST_CASE("property: oscillation of Vf is at most ||f||_1 / 2")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        auto f = mean_zero_project(oracle::random_exact_step(rng));
        if (f.l1_norm() == 0) continue;
        f *= Rational(1) / f.l1_norm();
        const VolterraCurve<Rational> v(f);
        CHECK(v.max_value() - v.min_value() <= Rational(1, 2));
    }
}

TEST_CASE("simplex on a small LP")
{
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6.
    Eigen::MatrixXd A(2, 2);
    A << 1, 2, 3, 1;
    const auto r = maximize_from_origin(A, Eigen::Vector2d(4, 6), Eigen::Vector2d(1, 1));
    CHECK(r.status == LinearProgramResult::Status::optimal);
    CHECK(r.value == doctest::Approx(2.8));
    Eigen::MatrixXd U(1, 2);
    U << 1, -1;
    CHECK(maximize_from_origin(U, Eigen::VectorXd::Ones(1), Eigen::Vector2d(1, 1)).status ==
          LinearProgramResult::Status::unbounded);
}

TEST_CASE("Chebyshev distance")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd y(30);
    for (auto& v : y) v = unit(rng);
    // Distance to the constants is the half range.
    const auto d = chebyshev_distance(Eigen::MatrixXd::Ones(30, 1), y);
    CHECK(d.distance == doctest::Approx((y.maxCoeff() - y.minCoeff()) / 2).epsilon(1e-12));
    CHECK(d.residual < 1e-12);
    CHECK(chebyshev_distance(Eigen::MatrixXd(30, 0), y).distance == doctest::Approx(y.cwiseAbs().maxCoeff()));

    // Lines: the best fit error equioscillates at three points; compare with a fine scan.
    Eigen::MatrixXd B(30, 2);
    for (int i = 0; i < 30; ++i) B(i, 0) = 1.0, B(i, 1) = i / 29.0;
    const auto dl = chebyshev_distance(B, y);
    double scan = 1e9;
    for (int a = -200; a <= 200; ++a)
        for (int b = -200; b <= 200; ++b) {
            const Eigen::Vector2d c(a / 200.0, b / 100.0);
            scan = std::min(scan, (y - B * c).cwiseAbs().maxCoeff());
        }
    CHECK(dl.distance <= scan + 1e-12);
    CHECK(dl.distance >= scan - 0.02);
    CHECK((B.transpose() * dl.weights).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(dl.weights.cwiseAbs().sum() <= 1.0 + 1e-9);
}

TEST_CASE("zigzag for one dimension")
{
    Eigen::MatrixXd e(5, 1);
    e << 0.5, -2.0, 1.0, 0.0, 2.0;
    const auto z = zigzag_find(e);
    CHECK(z.certified);
    CHECK(z.sup_norm_value == doctest::Approx(1.0));
    CHECK(z.indices == std::vector<std::size_t>{1});
    CHECK(z.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("zigzag matches exhaustive search on small problems")
{
    // Discrete Chebyshev-like vectors on 16 nodes.
    Eigen::MatrixXd E(16, 2);
    for (int i = 0; i < 16; ++i) {
        const double x = -1.0 + 2.0 * i / 15.0;
        E(i, 0) = 1.0;
        E(i, 1) = x;
    }
    const auto z = zigzag_find(E);
    CHECK(z.exhaustive);
    CHECK(z.sup_norm_value <= 1.0 + 1e-6);
    CHECK(z.sup_norm_value == doctest::Approx(oracle::zigzag_brute_force(E)).epsilon(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const int n = 1 + t % 4;
        Eigen::MatrixXd R(12, n);
        for (auto& v : R.reshaped()) v = unit(rng);
        const auto zr = zigzag_find(R);
        CHECK(zr.sup_norm_value == doctest::Approx(oracle::zigzag_brute_force(R)).epsilon(1e-10));
        CHECK(zr.interpolation_residual < 1e-9);
        CHECK(zr.certified == (zr.sup_norm_value <= 1.05));
    }
}

TEST_CASE("zigzag exchange search and errors")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::MatrixXd R(200, 5);
    for (auto& v : R.reshaped()) v = unit(rng);
    ZigzagOptions opt;
    opt.seed = 3;
    const auto a = zigzag_find(R, opt);
    const auto b = zigzag_find(R, opt);
    CHECK_FALSE(a.exhaustive);
    CHECK(a.indices == b.indices);
    CHECK(a.sup_norm_value >= 1.0);
    CHECK(std::is_sorted(a.indices.begin(), a.indices.end()));

    CHECK_THROWS_AS(zigzag_find(Eigen::MatrixXd::Ones(3, 4)), DomainError);
    Eigen::MatrixXd dep(6, 2);
    dep.col(0).setLinSpaced(6, 0.0, 1.0);
    dep.col(1) = 2.0 * dep.col(0);
    CHECK_THROWS_AS(zigzag_find(dep), DomainError);
    CHECK(binomial_saturating(64, 5) == 7624512);
    CHECK(binomial_saturating(1000, 500) == std::numeric_limits<std::size_t>::max());
}
