#pragma once

#include "snum/lorentz.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace snum {

struct GridSpec {
    int dim = 2;
    int cells_per_side = 1;

    bool operator==(const GridSpec&) const = default;
};

// Cell multi-index predicate; indices are in [0, cells_per_side).
using CellFilter = std::function<bool(std::span<const int>)>;

// |grad u| on every simplex of the triangulation, cell-major.
struct GradientField {
    GridSpec grid;
    std::size_t simplices_per_cell = 1;
    double simplex_measure = 0.0;
    std::vector<double> magnitudes;

    ValueMeasure value_measure() const;
    ValueMeasure value_measure(const CellFilter& keep) const;
};

// Continuous piecewise linear function on the uniform grid over (0,1)^d.
//
// Each cell z is split into d! simplices of the Kuhn triangulation taken in
// local coordinates y' with y'_i = 1 - y_i when z_i is odd and y'_i = y_i
// otherwise. The reflection makes the triangulation conforming and symmetric
// under x_i -> 1 - x_i, and makes l-infinity pyramids centred at nodes whose
// index coordinates share one parity exactly representable.
//
// Nodal values are stored row-major with the last coordinate fastest.
class GridFunction {
public:
    GridFunction(int dim, int cells_per_side, std::vector<double> nodal_values, bool boundary_zero);

    static GridFunction zeros(int dim, int cells_per_side, bool boundary_zero = true);
    // Samples f at the nodes. With boundary_zero the boundary nodes are set to 0.
    static GridFunction sample(int dim, int cells_per_side, const std::function<double(std::span<const double>)>& f,
                               bool boundary_zero);

    int dim() const { return grid_.dim; }
    int cells_per_side() const { return grid_.cells_per_side; }
    const GridSpec& grid() const { return grid_; }
    double h() const { return 1.0 / grid_.cells_per_side; }
    bool boundary_zero() const { return boundary_zero_; }
    std::size_t node_count() const { return values_.size(); }
    std::size_t cell_count() const;
    const std::vector<double>& nodal_values() const { return values_; }

    std::size_t node_index(std::span<const int> idx) const;
    double node_value(std::span<const int> idx) const { return values_[node_index(idx)]; }

    // Exact value of the interpolant at x in [0,1]^d.
    double value(std::span<const double> x) const;

    double sup_norm() const;
    GradientField gradient_field() const;

    // (min, max) of u over the closure of the cells accepted by keep.
    std::pair<double, double> range_over(const CellFilter& keep) const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator*=(double c);

private:
    GridSpec grid_;
    bool boundary_zero_;
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator*(double c, GridFunction u);

double sup_norm(const GridFunction& u);

// ||grad u||_X over Q.
double grid_gradient_lorentz_norm(const GridFunction& u, const LorentzParams& params);
// Same, after checking u lives on the declared grid; DomainError on mismatch.
double grid_gradient_lorentz_norm(const GridFunction& u, const LorentzParams& params, const GridSpec& declared);

// max(0, r - |x - c|_inf) with c a node and r = radius_cells * h.
// Requires the index coordinates of c to share one parity so that the pyramid
// is piecewise linear on the triangulation; then |grad u| = 1 on its support.
GridFunction linf_hat(int dim, int cells_per_side, std::span<const int> center, int radius_cells);

}  // namespace snum
