#include "doctest.h"
#include "oracles.hpp"

#include "snum/axioms.hpp"
#include "snum/error.hpp"
#include "snum/serialization.hpp"
#include "snum/snumbers.hpp"

#include <cmath>
#include <random>

using namespace snum;

TEST_CASE("kind codes")
{
    for (char c : std::string("acdbi")) CHECK(kind_code(parse_kind(c)) == c);
    CHECK_THROWS_AS(parse_kind('x'), DomainError);
    CHECK(parse_status("certified") == BoundStatus::certified);
}

TEST_CASE("isomorphism lower bound in one dimension")
{
    CHECK(*isomorphism_lower_1d(1, 2).lower_exact == Rational(1, 2));
    const auto b3 = isomorphism_lower_1d(3, 24);
    CHECK(*b3.lower_exact == Rational(1, 6));
    CHECK(b3.witness.at("identity_verified").get<bool>());
    CHECK(b3.witness.at("norm_b").get<std::string>() == "6");
    CHECK(*isomorphism_lower_1d(10, 40).lower_exact == Rational(1, 20));
    CHECK(isomorphism_lower_1d(4, 16, ArithmeticMode::floating).lower == 0.125);
    CHECK_THROWS_AS(isomorphism_lower_1d(2, 3), DomainError);
}

TEST_CASE("dipole subspace Bernstein ratio")
{
    const auto lo2 = bernstein_lower(dipole_subspace(2, 8));
    CHECK(lo2.status == BoundStatus::certified);
    CHECK(lo2.lower == doctest::Approx(0.25).epsilon(1e-12));
    const auto lo1 = bernstein_lower(dipole_subspace(1, 2));
    CHECK(lo1.lower == doctest::Approx(0.5).epsilon(1e-12));
    const auto up2 = bernstein_upper_1d(dipole_subspace(2, 8));
    CHECK(up2.status == BoundStatus::certified);
    CHECK(up2.upper >= 0.25 - 1e-12);
    CHECK(up2.upper <= 1.05 / 4);
}

TEST_CASE("Bernstein upper bound on random subspaces")
{
    std::mt19937_64 rng(31);
    for (std::size_t n = 1; n <= 3; ++n)
        for (int t = 0; t < 5; ++t) {
            const auto E = random_mean_zero_subspace(n, 64, rng);
            const auto b = bernstein_upper_1d(E);
            CHECK(b.status == BoundStatus::certified);
            CHECK(b.upper <= 1.05 / (2.0 * n));
            CHECK(b.witness.at("l1_norm_h").get<double>() >= 2.0 * n - 1e-9);
            // The ratio of E lies below the certified upper bound.
            if (n <= 3) CHECK(bernstein_lower(E).lower <= b.upper * (1 + 1e-9));
        }
    CHECK_THROWS_AS(StepSubspace(Eigen::MatrixXd::Ones(4, 1)), DomainError);
}

TEST_CASE("Gelfand adversary")
{
    const auto w0 = gelfand_lower_adversary({}, 1e-3);
    CHECK(w0.rho_bound == doctest::Approx(0.5));
    CHECK(w0.vf_at_split == doctest::Approx(0.5));
    const auto wc = gelfand_lower_adversary({StepFunction<double>::indicator(0.0, 1.0, 3.0)}, 1e-3);
    CHECK(wc.max_pairing == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(wc.rho_bound == doctest::Approx(0.5));

    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto w = gelfand_lower_adversary(random_step_functionals(4, 256, rng), 1e-3);
        CHECK(w.rho_bound >= 0.5 - 1e-3);
        CHECK(w.l1_norm == doctest::Approx(1.0));
        CHECK(std::abs(w.f.integral()) < 1e-12);
    }
    const auto wn = gelfand_lower_adversary(node_evaluation_functionals(3), 1e-3);
    CHECK(wn.rho_bound >= 0.5 - 1e-3);
    const auto b = gelfand_lower(5, {fourier_functionals(4, 64)}, 1e-3);
    CHECK(b.lower >= 0.499);
    CHECK(*b.upper_exact == Rational(1, 2));
    CHECK_THROWS_AS(gelfand_lower(2, {node_evaluation_functionals(2)}, 1e-3), DomainError);
}

TEST_CASE("Kolmogorov numbers")
{
    const auto up = kolmogorov_upper_1d(2);
    CHECK(*up.upper_exact == Rational(1, 4));
    CHECK(up.witness.at("attained").get<bool>());
    CHECK_THROWS_AS(kolmogorov_upper_1d(1), DomainError);

    // Dipole at cells 1, 2 of N = 1024.
    const Rational N(1024);
    auto f = StepFunction<Rational>::indicator(Rational(0), 1 / N, N / 2);
    f -= StepFunction<Rational>::indicator(1 / N, 2 / N, N / 2);
    CHECK(kolmogorov_midrange_distance(f) == Rational(1, 4));
    CHECK_THROWS_AS(kolmogorov_midrange_distance(StepFunction<Rational>::indicator(Rational(0), Rational(1, 2))),
                    PreconditionError);

    const auto lc = kolmogorov_lower_witness(2, 10, {constants_adversary()});
    CHECK(lc.lower >= 0.25 - 1e-3);
    CHECK(lc.witness.at("two_point_bound").get<std::string>() == "1/4");
    // Reference from an independent LP solve: degree <= 3 polynomials, same sample set.
    const auto lp = kolmogorov_lower_witness(5, 10, {polynomial_adversary(3)});
    CHECK(lp.lower == doctest::Approx(0.24948).epsilon(1e-4));
    CHECK_THROWS_AS(kolmogorov_lower_witness(3, 10, {polynomial_adversary(2)}), DomainError);
    CHECK_THROWS_AS(kolmogorov_lower_witness(3, 60, {constants_adversary()}), CapacityError);
}

TEST_CASE("approximation numbers")
{
    CHECK(*approximation_upper(5).upper_exact == Rational(1, 2));
    CHECK(approximation_upper(1).upper == 0.5);
}

TEST_CASE("isomorphism lower bound on the cube")
{
    const auto X = LorentzParams::make(2, 1);
    CHECK(*isomorphism_lower_ddim(2, 2, X).lower_exact == Rational(1, 8));
    CHECK(*isomorphism_lower_ddim(3, 1, LorentzParams::make(3, 1)).lower_exact == Rational(1, 6));
    for (int m : {1, 2, 3, 4}) {
        const auto b = isomorphism_lower_ddim(2, m, X);
        CHECK(b.lower * m == doctest::Approx(0.25));
        CHECK(b.witness.at("sum_of_hats_gradient_norm").get<double>() == doctest::Approx(2.0));
    }
    CHECK_THROWS_AS(isomorphism_lower_ddim(2, 2, LorentzParams::make(2, 2)), UnsupportedRegime);
    CHECK_THROWS_AS(hat_construction(2, 3, 8), ConstructionError);
    CHECK(hat_construction(2, 2, 8).hats.size() == 4);
    CHECK(hat_subspace_bernstein_ratio(hat_construction(2, 2, 8), X) == doctest::Approx(0.125));
}

TEST_CASE("Bernstein chain on the cube")
{
    const auto X = LorentzParams::make(2, 1);
    const auto hats = hat_construction(2, 2, 8);
    const auto b = bernstein_upper_ddim(GridSubspace{hats.hats}, 2);
    CHECK(b.status == BoundStatus::certified);
    const double direct = hat_subspace_bernstein_ratio(hats, X);
    CHECK(direct >= 0.125 - 1e-12);
    CHECK(direct <= b.upper);
    for (const auto& l : chain_links(b)) CHECK(l.holds);

    std::mt19937_64 rng(5);
    const auto E1 = random_grid_subspace(1, 2, 16, rng);
    CHECK(bernstein_upper_ddim(E1, 3).upper == doctest::Approx(embedding_norm_upper(2)));

    for (int t = 0; t < 3; ++t) {
        const auto E = random_grid_subspace(3, 2, 32, rng);
        const auto c = bernstein_upper_ddim(E, 4);
        const auto links = chain_links(c);
        CHECK(links.size() == 7);
        for (const auto& l : links) CHECK(l.slack >= 0.0);
        CHECK(c.witness.at("direct_below_chain").get<bool>());
    }
    CHECK_THROWS_AS(bernstein_upper_ddim(random_grid_subspace(2, 2, 12, rng), 3), DomainError);
}

TEST_CASE("embedding norm")
{
    CHECK(embedding_norm_upper(2) == doctest::Approx(1.0 / (2.0 * std::sqrt(M_PI))));
}

TEST_CASE("axiom suite")
{
    std::vector<SNumberBound> bounds;
    for (std::size_t n = 1; n <= 10; ++n) {
        bounds.push_back(isomorphism_lower_1d(n, 2 * n));
        bounds.push_back(approximation_upper(n));
    }
    const auto ok = snumber_axiom_suite(bounds, {{volterra_label, 0.5}});
    CHECK(ok.ok);
    CHECK(ok.checks > 0);

    bounds.push_back(bernstein_upper_1d(dipole_subspace(2, 8)));
    SNumberBound fake;
    fake.kind = SNumberKind::isomorphism;
    fake.n = 2;
    fake.lower = 0.4;
    bounds.push_back(fake);
    const auto bad = snumber_axiom_suite(bounds, {{volterra_label, 0.5}});
    CHECK_FALSE(bad.ok);
    bool flagged = false;
    for (const auto& v : bad.violations) flagged = flagged || v.rule.find("monotone") != std::string::npos;
    CHECK(flagged);

    // Uncertified bounds are ignored.
    bounds.back().status = BoundStatus::uncertified;
    CHECK(snumber_axiom_suite(bounds, {{volterra_label, 0.5}}).ok);

    // Different operators are never compared.
    SNumberBound other = fake;
    other.status = BoundStatus::certified;
    other.operator_label = "another operator";
    bounds.push_back(other);
    CHECK(snumber_axiom_suite(bounds, {{volterra_label, 0.5}}).ok);
}

TEST_CASE("bound serialization")
{
    const auto b = isomorphism_lower_1d(3, 6);
    const auto back = bound_from_json(to_json(b));
    CHECK(back.kind == b.kind);
    CHECK(back.n == 3);
    CHECK(*back.lower_exact == Rational(1, 6));
    CHECK(back.upper == b.upper);
    const auto j = to_json(kolmogorov_lower_witness(2, 4, {constants_adversary()}));
    CHECK(j.at("lower").is_number());
    SNumberBound open;
    CHECK(to_json(open).at("upper").is_null());
    CHECK(std::isinf(bound_from_json(to_json(open)).upper));
}
