#pragma once

#include "snum/grid_function.hpp"
#include "snum/hilbert.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace snum {

using Point = std::vector<double>;

// Interior of the closure of the cubes with indices i..j of an ordering.
class CubeUnion {
public:
    CubeUnion(std::shared_ptr<const CubeOrdering> ordering, CurveIndex i, CurveIndex j);

    const CubeOrdering& ordering() const { return *ordering_; }
    const std::shared_ptr<const CubeOrdering>& ordering_ptr() const { return ordering_; }
    CurveIndex first() const { return i_; }
    CurveIndex last() const { return j_; }
    int dim() const { return ordering_->dim(); }
    int order() const { return ordering_->order(); }
    std::size_t cube_count() const { return static_cast<std::size_t>(j_ - i_) + 1; }
    std::vector<DyadicCube> cubes() const;
    double measure() const;

    bool contains_cell(std::span<const std::uint32_t> coords) const;
    bool contains(std::span<const double> x) const;
    // dist(x, boundary) for x in the union, 0 otherwise. Exact up to rounding.
    double boundary_distance(std::span<const double> x) const;
    // Face connectivity of the member cubes.
    bool is_connected() const;

private:
    // Cells at Chebyshev ring < clearance of a member cell are all members.
    int clearance(std::size_t linear_cell) const { return clearance_[linear_cell]; }

    std::shared_ptr<const CubeOrdering> ordering_;
    CurveIndex i_;
    CurveIndex j_;
    std::vector<int> clearance_;
};

CubeUnion segment_domain(std::shared_ptr<const CubeOrdering> ordering, CurveIndex i, CurveIndex j);
CubeUnion segment_domain(const CubeOrdering& ordering, CurveIndex i, CurveIndex j);

// Aligned run of 2^{ds} consecutive indices filling one level-(k-s) cube.
struct DyadicBlock {
    CurveIndex first = 0;
    CurveIndex last = 0;
    DyadicCube cube;
};

// Consecutive blocks of one generation on one side of the pivot.
// The pivot block is counted in both top-level runs.
struct GenerationRun {
    int level = 0;
    int count = 0;
    int direction = 0;
};

// Greedy maximal aligned blocks of [i, j]; sizes rise then fall along the
// curve. Throws ConstructionError if a block is not a single dyadic cube.
std::vector<DyadicBlock> dyadic_decomposition(const CubeOrdering& o, CurveIndex i, CurveIndex j);

struct JohnCertificate {
    int dim = 0;
    Point center;
    double constant = 1.0;
    std::vector<DyadicBlock> blocks;
    std::size_t pivot = 0;
    std::vector<GenerationRun> runs;
    // Polyline from the centre of each block to `center`.
    std::vector<std::vector<Point>> block_paths;

    // Polyline from x to center; x must lie in the closure of a block.
    std::vector<Point> curve(std::span<const double> x) const;
    std::size_t block_of(std::span<const double> x) const;
};

// Sum of the segment, pivot-run and generation terms of the chain estimate.
// Depends on d only.
double uniform_john_constant(int d);
// John constant of a cube with the segment-to-centre curves: sqrt(d).
double cube_john_constant(int d);

JohnCertificate john_bound_constructive(const CubeUnion& omega);

struct JohnVerification {
    bool passed = false;
    double worst_ratio = 0.0;
    std::size_t evaluations = 0;
    Point worst_start;
    Point worst_point;
};

// Max of |x - g(t)| / dist(g(t), boundary) over every cube centre at every
// polyline vertex plus `samples` random (x, t) pairs. Throws
// CertificateInvalid if a curve leaves omega.
JohnVerification verify_john_certificate(const CubeUnion& omega, const JohnCertificate& cert, std::size_t samples,
                                         std::uint64_t seed = 0);

double unit_ball_volume(int d);
// Oscillation over a cube is at most this times ||grad u||_{d,1} on the cube.
double cube_oscillation_constant(int d);
// Oscillation constant for a chain of `blocks` cubes: cube constant times blocks^{1 - 1/d}.
double oscillation_constant(int d, std::size_t blocks);

struct OscillationReport {
    bool holds = false;
    double oscillation = 0.0;
    double gradient_norm = 0.0;
    double constant = 0.0;
    double slack = 0.0;
};

// sup |u(x) - u(y)| over omega against C ||grad u chi_omega||_{d,1}.
// The grid of u must refine the level-k cubes.
OscillationReport oscillation_check(const CubeUnion& omega, const GridFunction& u);

}  // namespace snum
