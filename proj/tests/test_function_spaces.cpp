#include "doctest.h"
#include "oracles.hpp"

#include "snum/error.hpp"
#include "snum/grid_function.hpp"
#include "snum/lorentz.hpp"
#include "snum/serialization.hpp"
#include "snum/step_function.hpp"

#include <cmath>
#include <random>

using namespace snum;

TEST_CASE("step function construction and validation")
{
    CHECK_THROWS_AS(StepFunction<double>({0.0, 0.5}, {1.0}), DomainError);
    CHECK_THROWS_AS(StepFunction<double>({0.0, 0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(StepFunction<double>({0.0, 1.0}, {1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(StepFunction<double>::indicator(0.5, 0.5), DomainError);

    const auto f = StepFunction<double>::indicator(0.25, 0.5, 3.0);
    CHECK(f(0.0) == 0.0);
    CHECK(f(0.25) == 3.0);
    CHECK(f(0.5) == 0.0);
    CHECK(f.integral() == doctest::Approx(0.75));
    CHECK(f.integral_to(0.375) == doctest::Approx(0.375));
}

TEST_CASE("step function arithmetic is exact on rationals")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const auto f = oracle::random_exact_step(rng);
        const auto g = oracle::random_exact_step(rng);
        const auto s = f + g;
        CHECK(s.integral() == f.integral() + g.integral());
        CHECK((s - g) == f);
        CHECK((Rational(3) * f).integral() == 3 * f.integral());
        CHECK(f.canonical().l1_norm() == f.l1_norm());
        const Rational x = oracle::ratio(static_cast<long>(rng() % 64), 64);
        CHECK(f.integral_to(x) == oracle::integrate_to(f, x));
    }
}

TEST_CASE("mean-zero tag")
{
    const auto f = StepFunction<Rational>::indicator(Rational(0), Rational(1, 2), Rational(1)) -
                   StepFunction<Rational>::indicator(Rational(1, 2), Rational(1), Rational(1));
    CHECK(MeanZeroTag{}.accepts(f));
    CHECK_FALSE(MeanZeroTag{}.accepts(StepFunction<Rational>::indicator(Rational(0), Rational(1, 3))));
    CHECK(MeanZeroTag{1e-9}.accepts(to_double(f)));
}

TEST_CASE("distribution function")
{
    const auto chi = StepFunction<double>::indicator(0.0, 0.5);
    CHECK(distribution_function(chi, 0.5) == 0.5);
    CHECK(distribution_function(chi, 1.0) == 0.0);
    const auto f = StepFunction<double>::indicator(0.0, 0.25, 2.0) - StepFunction<double>::indicator(0.5, 0.75, 1.0);
    CHECK(distribution_function(f, 1.5) == 0.25);
    CHECK(distribution_function(f, 0.5) == 0.5);
    CHECK_THROWS_AS(distribution_function(f, -1.0), DomainError);

    const auto fe = to_exact(f);
    CHECK(distribution_function(fe, Rational(3, 2)) == Rational(1, 4));
}

TEST_CASE("Lorentz parameters")
{
    CHECK_THROWS_AS(LorentzParams::make(0.5, 0.5), DomainError);
    CHECK_THROWS_AS(LorentzParams::make(2.0, 0.5), DomainError);
    CHECK_THROWS_AS(LorentzParams::make(2.0, 3.0), UnsupportedRegime);
    CHECK_NOTHROW(LorentzParams::make(2.0, 2.0));
}

TEST_CASE("Lorentz norm closed values")
{
    const auto X21 = LorentzParams::make(2, 1);
    CHECK(lorentz_norm(StepFunction<double>::indicator(0.0, 0.5), X21) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(lorentz_norm(StepFunction<double>(), X21) == 0.0);
    for (int d = 1; d <= 4; ++d) {
        CHECK(lorentz_norm(StepFunction<double>::indicator(0.0, 1.0), LorentzParams::make(d, 1)) ==
              doctest::Approx(d).epsilon(1e-14));
        const auto exact = unit_indicator_norm_exact(LorentzParams::make(d, 1));
        REQUIRE(exact);
        CHECK(*exact == d);
    }
    CHECK(indicator_lorentz_norm(0.25, LorentzParams::make(3, 2)) ==
          doctest::Approx(std::pow(1.5, 0.5) * std::pow(0.25, 1.0 / 3)).epsilon(1e-14));
}

TEST_CASE("Lorentz norm against the rearrangement and quadrature oracles")
{
    std::mt19937_64 rng(5);
    const std::vector<std::pair<double, double>> pq{{1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1.5}};
    for (int t = 0; t < 300; ++t) {
        const auto f = oracle::random_step(rng);
        const auto [p, q] = pq[t % pq.size()];
        const double lib = lorentz_norm(f, LorentzParams::make(p, q));
        CHECK(lib == doctest::Approx(oracle::lorentz_rearrangement(oracle::pieces(f), p, q)).epsilon(1e-12));
        if (t < 12) CHECK(lib == doctest::Approx(oracle::lorentz_quadrature(oracle::pieces(f), p, q)).epsilon(1e-4));
    }
}

TEST_CASE("property: superadditivity over disjoint pieces")
{
    std::mt19937_64 rng(7);
    const std::vector<std::pair<double, double>> pq{{2, 1}, {3, 1}, {2, 2}, {3, 2}};
    for (int t = 0; t < 1000; ++t) {
        const auto f = oracle::random_step(rng);
        const auto [p, q] = pq[t % pq.size()];
        const auto X = LorentzParams::make(p, q);
        const std::size_t parts = 1 + rng() % 4;
        std::vector<std::vector<double>> split(parts, std::vector<double>(f.pieces(), 0.0));
        for (std::size_t i = 0; i < f.pieces(); ++i) split[rng() % parts][i] = f.values()[i];
        double sum = 0.0;
        for (auto& v : split) sum += std::pow(lorentz_norm(StepFunction<double>(f.breakpoints(), v), X), p);
        CHECK(sum <= std::pow(lorentz_norm(f, X), p) + 1e-9);
    }
}

TEST_CASE("property: L^{p,p} equals L^p")
{
    std::mt19937_64 rng(8);
    for (int t = 0; t < 1000; ++t) {
        const auto f = oracle::random_step(rng);
        const double p = 1.0 + (rng() % 40) / 10.0;
        double lp = 0.0;
        for (auto [v, m] : oracle::pieces(f)) lp += std::pow(std::abs(v), p) * m;
        lp = std::pow(lp, 1.0 / p);
        CHECK(lorentz_norm(f, LorentzParams::make(p, p)) == doctest::Approx(lp).epsilon(1e-10));
    }
}

TEST_CASE("grid functions")
{
    CHECK_THROWS_AS(GridFunction(2, 2, std::vector<double>(9, 1.0), true), DomainError);
    const GridFunction z = GridFunction::zeros(2, 4);
    CHECK(z.sup_norm() == 0.0);
    CHECK(grid_gradient_lorentz_norm(z, LorentzParams::make(2, 1)) == 0.0);

    std::vector<double> nodes{0, 1, -2, 0};
    const GridFunction u(1, 3, nodes, true);
    CHECK(sup_norm(u) == 2.0);

    // Constant function without boundary condition.
    const GridFunction c = GridFunction::sample(2, 4, [](std::span<const double>) { return 3.0; }, false);
    CHECK(grid_gradient_lorentz_norm(c, LorentzParams::make(2, 1)) == 0.0);

    // Linear ramp: |grad u| = 1 everywhere.
    const GridFunction ramp = GridFunction::sample(2, 8, [](std::span<const double> x) { return x[0]; }, false);
    CHECK(grid_gradient_lorentz_norm(ramp, LorentzParams::make(2, 2)) == doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<double> x{0.3, 0.7};
    CHECK(ramp.value(x) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK_THROWS_AS(grid_gradient_lorentz_norm(ramp, LorentzParams::make(2, 2), GridSpec{2, 4}), DomainError);
}

TEST_CASE("P1 interpolation reproduces affine functions")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int d = 1; d <= 3; ++d) {
        const double a = unit(rng), b = unit(rng), c = unit(rng);
        auto f = [&](std::span<const double> x) {
            double s = a;
            s += b * x[0];
            if (x.size() > 1) s += c * x[1];
            return s;
        };
        const GridFunction u = GridFunction::sample(d, 4, f, false);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& xi : x) xi = unit(rng);
            CHECK(u.value(x) == doctest::Approx(f(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("l-infinity hat")
{
    const std::vector<int> center{2, 2};
    const GridFunction hat = linf_hat(2, 8, center, 2);
    CHECK(hat.sup_norm() == doctest::Approx(0.25));
    // |grad u| is the indicator of a square of side 2r = 1/2.
    const double expected = 2.0 * std::sqrt(0.25);
    CHECK(grid_gradient_lorentz_norm(hat, LorentzParams::make(2, 1)) == doctest::Approx(expected).epsilon(1e-12));
    const std::vector<double> x{0.25 + 0.1, 0.25 - 0.05};
    CHECK(hat.value(x) == doctest::Approx(0.25 - 0.1).epsilon(1e-12));
    const std::vector<int> mixed{1, 2};
    CHECK_THROWS_AS(linf_hat(2, 8, mixed, 1), ConstructionError);
    const std::vector<int> edge{1, 1};
    CHECK_THROWS_AS(linf_hat(2, 8, edge, 2), ConstructionError);
}

TEST_CASE("serialization round trips")
{
    std::mt19937_64 rng(4);
    const auto f = oracle::random_step(rng);
    CHECK(step_function_from_json(to_json(f)) == f);
    const auto fe = oracle::random_exact_step(rng);
    CHECK(exact_step_function_from_json(to_json(fe)) == fe);
    const GridFunction u = linf_hat(2, 4, std::vector<int>{2, 2}, 2);
    CHECK(grid_function_from_json(to_json(u)).nodal_values() == u.nodal_values());
}
