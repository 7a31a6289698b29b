#include "doctest.h"
#include "oracles.hpp"

#include "snum/error.hpp"
#include "snum/john.hpp"

#include <cmath>
#include <memory>
#include <random>

using namespace snum;

namespace {

std::shared_ptr<const CubeOrdering> curve(int d, int k) { return std::make_shared<const CubeOrdering>(hilbert_order(d, k)); }

}  // namespace

TEST_CASE("segment domain geometry")
{
    const auto o = curve(2, 3);
    const CubeUnion single(o, 5, 5);
    CHECK(single.boundary_distance(o->cube(5).center()) == doctest::Approx(1.0 / 16));
    const CubeUnion all(o, 1, 64);
    CHECK(all.boundary_distance(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(all.measure() == doctest::Approx(1.0));
    CHECK(all.boundary_distance(std::vector<double>{1.5, 0.5}) == 0.0);

    const CubeUnion l(curve(2, 2), 2, 5);
    CHECK(l.cube_count() == 4);
    CHECK(l.is_connected());
    CHECK_THROWS_AS(CubeUnion(o, 3, 2), DomainError);
}

TEST_CASE("boundary distance against the brute-force oracle")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 2}}) {
        const auto o = curve(d, k);
        std::uniform_int_distribution<CurveIndex> pick(1, o->size());
        for (int t = 0; t < 40; ++t) {
            CurveIndex i = pick(rng), j = pick(rng);
            if (i > j) std::swap(i, j);
            const CubeUnion omega(o, i, j);
            CHECK(omega.is_connected());
            for (int s = 0; s < 20; ++s) {
                // Points inside a member cube.
                const auto q = o->cube(std::uniform_int_distribution<CurveIndex>(i, j)(rng));
                std::vector<double> x = q.lower_corner();
                for (auto& xi : x) xi += unit(rng) * q.side();
                CHECK(omega.boundary_distance(x) == doctest::Approx(oracle::boundary_distance(omega, x)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("dyadic decomposition")
{
    const auto o = curve(2, 3);
    const auto blocks = dyadic_decomposition(*o, 1, 64);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks.front().cube.level == 0);
    const auto b = dyadic_decomposition(*o, 3, 20);
    CurveIndex next = 3;
    for (const auto& blk : b) {
        CHECK(blk.first == next);
        next = blk.last + 1;
        const CurveIndex len = blk.last - blk.first + 1;
        CHECK((len & (len - 1)) == 0);
        CHECK((blk.first - 1) % len == 0);
    }
    CHECK(next == 21);
    CHECK_THROWS_AS(dyadic_decomposition(serpentine_order(2, 2), 1, 8), ConstructionError);
}

TEST_CASE("cube certificates")
{
    for (int d = 2; d <= 3; ++d) {
        const auto o = curve(d, 2);
        const CubeUnion single(o, 3, 3);
        const auto cert = john_bound_constructive(single);
        CHECK(cert.blocks.size() == 1);
        const auto v = verify_john_certificate(single, cert, 2000, 1);
        CHECK(v.passed);
        CHECK(v.worst_ratio <= cube_john_constant(d) * (1 + 1e-12));
        // The full cube collapses to one block at level 0.
        const CubeUnion full(o, 1, o->size());
        const auto cf = john_bound_constructive(full);
        CHECK(cf.blocks.size() == 1);
        CHECK(cf.constant == cert.constant);
        CHECK(verify_john_certificate(full, cf, 2000, 2).worst_ratio <= cube_john_constant(d) * (1 + 1e-12));
    }
}

TEST_CASE("constructive constant is k-independent")
{
    std::mt19937_64 rng(4);
    const auto o = curve(2, 4);
    std::uniform_int_distribution<CurveIndex> pick(1, o->size());
    for (int t = 0; t < 500; ++t) {
        CurveIndex i = pick(rng), j = pick(rng);
        if (i > j) std::swap(i, j);
        CHECK(john_bound_constructive(CubeUnion(o, i, j)).constant == uniform_john_constant(2));
    }
}

TEST_CASE("all segment domains at d = 2, k = 3 verify")
{
    const auto o = curve(2, 3);
    std::size_t pairs = 0;
    for (CurveIndex i = 1; i <= 64; ++i)
        for (CurveIndex j = i; j <= 64; ++j) {
            const CubeUnion omega(o, i, j);
            const auto cert = john_bound_constructive(omega);
            const auto v = verify_john_certificate(omega, cert, 200, i * 100 + j);
            CHECK(v.passed);
            ++pairs;
        }
    CHECK(pairs == 2080);
}

TEST_CASE("a wrong certificate fails")
{
    // L-shaped union: cubes 2..4 of the first-order curve.
    const auto o = curve(2, 1);
    const CubeUnion omega(o, 1, 3);
    auto cert = john_bound_constructive(omega);
    cert.constant = 1.0;
    const auto v = verify_john_certificate(omega, cert, 5000, 3);
    CHECK_FALSE(v.passed);
    CHECK(v.worst_ratio > 1.0);
}

TEST_CASE("curves stay inside and end at the centre")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto o = curve(3, 2);
    const CubeUnion omega(o, 7, 50);
    const auto cert = john_bound_constructive(omega);
    for (int t = 0; t < 100; ++t) {
        const auto q = o->cube(7 + static_cast<CurveIndex>(rng() % 44));
        std::vector<double> x = q.center();
        for (auto& xi : x) xi += (unit(rng) - 0.5) * 0.9 * q.side();
        const auto path = cert.curve(x);
        CHECK(path.front() == x);
        CHECK(path.back() == cert.center);
        for (std::size_t s = 1; s + 1 < path.size(); ++s) CHECK(omega.boundary_distance(path[s]) > 0.0);
    }
}

TEST_CASE("oscillation constants")
{
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
    CHECK(oscillation_constant(2, 1) == cube_oscillation_constant(2));
    CHECK(oscillation_constant(2, 4) == doctest::Approx(2.0 * cube_oscillation_constant(2)));
}

TEST_CASE("oscillation check")
{
    const auto o = curve(2, 3);
    const CubeUnion omega(o, 10, 30);
    const auto zero = GridFunction::zeros(2, 16);
    const auto r0 = oscillation_check(omega, zero);
    CHECK(r0.holds);
    CHECK(r0.oscillation == 0.0);
    CHECK_THROWS_AS(oscillation_check(omega, GridFunction::zeros(2, 12)), DomainError);

    // Hat inside one level-3 cube: osc = height r, ||grad|| = d (2r).
    const auto q = o->cube(12);
    const std::vector<int> c{static_cast<int>(4 * q.coords[0] + 2), static_cast<int>(4 * q.coords[1] + 2)};
    const auto hat = linf_hat(2, 32, c, 2);
    const auto r = oscillation_check(omega, hat);
    CHECK(r.oscillation == doctest::Approx(1.0 / 16));
    CHECK(r.gradient_norm == doctest::Approx(2.0 * (2.0 / 16)));
    CHECK(r.holds);
    CHECK(r.slack == doctest::Approx(r.constant * r.gradient_norm - r.oscillation));
}

TEST_CASE("property: oscillation inequality on random grid functions")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto o = curve(2, 3);
    for (int t = 0; t < 100; ++t) {
        const auto u = GridFunction::sample(2, 16, [&](std::span<const double>) { return unit(rng); }, true);
        bool all = true;
        for (CurveIndex i = 1; i <= 64; ++i)
            for (CurveIndex j = i; j <= 64; ++j) all = all && oscillation_check(CubeUnion(o, i, j), u).holds;
        CHECK(all);
    }
}
