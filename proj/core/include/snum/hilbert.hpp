#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace snum {

// 1-based position along a cube ordering.
using CurveIndex = std::uint32_t;

// Largest d*k for which an ordering table is materialised.
inline constexpr int max_ordering_bits = 24;

// {x in Q : 2^level x - coords in Q}.
struct DyadicCube {
    int level = 0;
    std::vector<std::uint32_t> coords;

    int dim() const { return static_cast<int>(coords.size()); }
    double side() const;
    double volume() const;
    std::vector<double> center() const;
    std::vector<double> lower_corner() const;
    // Closed cube membership.
    bool contains(std::span<const double> x) const;
    bool contains(const DyadicCube& finer) const;
    DyadicCube ancestor(int coarser_level) const;

    bool operator==(const DyadicCube&) const = default;
};

std::string to_string(const DyadicCube& cube);

// A bijection {1, ..., 2^{dk}} -> level-k dyadic cubes.
class CubeOrdering {
public:
    // flat_coords holds d coordinates per index, in index order. Throws
    // ConstructionError unless the table is a bijection onto level-k cubes.
    CubeOrdering(int dim, int order, std::vector<std::uint32_t> flat_coords, std::string name);

    int dim() const { return dim_; }
    int order() const { return order_; }
    CurveIndex size() const { return static_cast<CurveIndex>(inverse_.size()); }
    const std::string& name() const { return name_; }

    std::span<const std::uint32_t> coords(CurveIndex index) const;
    DyadicCube cube(CurveIndex index) const;
    // Inverse map; coordinates must lie at level k.
    CurveIndex index_of(std::span<const std::uint32_t> coords) const;
    CurveIndex index_of(const DyadicCube& cube) const;
    // Inverse map without range checks, for hot loops.
    CurveIndex index_of_unchecked(std::span<const std::uint32_t> coords) const
    {
        std::size_t linear = 0;
        for (auto c : coords) linear = (linear << order_) | c;
        return inverse_[linear];
    }

    // Copy with the cubes at positions a and b exchanged.
    CubeOrdering with_swapped(CurveIndex a, CurveIndex b) const;

private:
    int dim_;
    int order_;
    std::string name_;
    std::vector<std::uint32_t> coords_;
    std::vector<CurveIndex> inverse_;
};

using HilbertOrdering = CubeOrdering;

// Throws CapacityError when d*k exceeds max_ordering_bits or d, k < 1.
CubeOrdering hilbert_order(int d, int k);
CubeOrdering row_major_order(int d, int k);
// Boustrophedon: row-major with every other line reversed, recursively.
CubeOrdering serpentine_order(int d, int k);

struct AdjacencyCheck {
    bool ok = true;
    // Index i such that cubes i and i+1 do not share a face.
    std::optional<CurveIndex> first_violation;
};

struct NestingCheck {
    bool ok = true;
    std::optional<DyadicCube> first_violation;
};

AdjacencyCheck check_face_adjacency(const CubeOrdering& o);
NestingCheck check_prefix_nesting(const CubeOrdering& o);

// Order in which the level-l ancestors are first visited.
std::vector<DyadicCube> induced_block_order(const CubeOrdering& o, int level);

// True iff the sequence equals the ordering after some signed permutation of
// the coordinate axes.
bool same_up_to_cube_symmetry(const std::vector<DyadicCube>& sequence, const CubeOrdering& o);

}  // namespace snum
