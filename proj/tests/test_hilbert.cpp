#include "doctest.h"
#include "oracles.hpp"

#include "snum/error.hpp"
#include "snum/hilbert.hpp"

#include <set>

using namespace snum;

namespace {

std::vector<std::vector<std::uint32_t>> table(const CubeOrdering& o)
{
    std::vector<std::vector<std::uint32_t>> out;
    for (CurveIndex t = 1; t <= o.size(); ++t) {
        const auto c = o.coords(t);
        out.emplace_back(c.begin(), c.end());
    }
    return out;
}

}  // namespace

TEST_CASE("one-dimensional curve is the identity scan")
{
    const auto o = hilbert_order(1, 2);
    CHECK(table(o) == std::vector<std::vector<std::uint32_t>>{{0}, {1}, {2}, {3}});
}

TEST_CASE("first-order planar curve is a U")
{
    const auto o = hilbert_order(2, 1);
    CHECK(table(o) == std::vector<std::vector<std::uint32_t>>{{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(check_face_adjacency(o).ok);
}

TEST_CASE("planar curve agrees with the classic construction up to a cube symmetry")
{
    for (int k = 1; k <= 6; ++k) {
        const std::uint32_t n = 1u << k;
        std::vector<DyadicCube> ref;
        for (std::uint32_t t = 0; t < n * n; ++t) {
            const auto [x, y] = oracle::hilbert_d2xy(n, t);
            ref.push_back(DyadicCube{k, {x, y}});
        }
        CHECK(same_up_to_cube_symmetry(ref, hilbert_order(2, k)));
    }
}

TEST_CASE("orderings are bijections with consistent inverses")
{
    for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {4, 2}}) {
        const auto o = hilbert_order(d, k);
        std::set<std::vector<std::uint32_t>> seen;
        for (CurveIndex t = 1; t <= o.size(); ++t) {
            const auto c = o.coords(t);
            seen.emplace(c.begin(), c.end());
            CHECK(o.index_of(c) == t);
            CHECK(o.index_of(o.cube(t)) == t);
        }
        CHECK(seen.size() == o.size());
    }
    CHECK_THROWS_AS(CubeOrdering(2, 1, {0, 0, 0, 0, 1, 1, 1, 0}, "dup"), ConstructionError);
}

TEST_CASE("capacity")
{
    CHECK_THROWS_AS(hilbert_order(0, 2), CapacityError);
    CHECK_THROWS_AS(hilbert_order(2, 0), CapacityError);
    CHECK_THROWS_AS(hilbert_order(5, 5), CapacityError);
}

TEST_CASE("face adjacency")
{
    CHECK(check_face_adjacency(hilbert_order(3, 3)).ok);
    const auto rm = check_face_adjacency(row_major_order(2, 1));
    CHECK_FALSE(rm.ok);
    REQUIRE(rm.first_violation);
    CHECK(*rm.first_violation == 2);
    CHECK(check_face_adjacency(serpentine_order(2, 3)).ok);
}

TEST_CASE("prefix nesting")
{
    for (int k = 1; k <= 6; ++k) CHECK(check_prefix_nesting(hilbert_order(2, k)).ok);
    for (int k = 1; k <= 3; ++k) CHECK(check_prefix_nesting(hilbert_order(3, k)).ok);
    CHECK_FALSE(check_prefix_nesting(serpentine_order(2, 2)).ok);
    CHECK(check_prefix_nesting(row_major_order(2, 1)).ok);
    CHECK(check_prefix_nesting(serpentine_order(3, 1)).ok);

    const auto bad = hilbert_order(2, 3).with_swapped(2, 64);
    const auto r = check_prefix_nesting(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.first_violation.has_value());
}

TEST_CASE("induced block order follows the coarse curve")
{
    const auto o = hilbert_order(2, 4);
    for (int l = 1; l < 4; ++l) {
        const auto blocks = induced_block_order(o, l);
        CHECK(blocks.size() == (1u << (2 * l)));
        CHECK(same_up_to_cube_symmetry(blocks, hilbert_order(2, l)));
    }
}

TEST_CASE("dyadic cubes")
{
    const DyadicCube q{2, {1, 3}};
    CHECK(q.side() == 0.25);
    CHECK(q.center() == std::vector<double>{0.375, 0.875});
    CHECK(q.ancestor(1) == DyadicCube{1, {0, 1}});
    CHECK(q.ancestor(1).contains(q));
    CHECK_FALSE(DyadicCube{1, {1, 1}}.contains(q));
}
