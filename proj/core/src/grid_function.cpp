#include "snum/grid_function.hpp"

#include "snum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace snum {

namespace {

std::size_t ipow(std::size_t base, int exp)
{
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

std::size_t factorial(int n)
{
    std::size_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::size_t>(i);
    return r;
}

// All permutations of 0..d-1 in lexicographic order.
std::vector<std::vector<int>> permutations(int d)
{
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

void cell_multi_index(std::size_t linear, int dim, int ns, std::vector<int>& z)
{
    for (int i = dim - 1; i >= 0; --i) {
        z[static_cast<std::size_t>(i)] = static_cast<int>(linear % static_cast<std::size_t>(ns));
        linear /= static_cast<std::size_t>(ns);
    }
}

void check_grid(int dim, int ns)
{
    if (dim < 1) throw DomainError("grid dimension must be >= 1");
    if (ns < 1) throw DomainError("grid needs at least one cell per side");
}

}  // namespace

ValueMeasure GradientField::value_measure() const
{
    ValueMeasure out;
    out.reserve(magnitudes.size());
    for (double g : magnitudes) out.emplace_back(g, simplex_measure);
    return out;
}

ValueMeasure GradientField::value_measure(const CellFilter& keep) const
{
    ValueMeasure out;
    std::vector<int> z(static_cast<std::size_t>(grid.dim));
    const std::size_t cells = magnitudes.size() / simplices_per_cell;
    for (std::size_t c = 0; c < cells; ++c) {
        cell_multi_index(c, grid.dim, grid.cells_per_side, z);
        if (!keep(z)) continue;
        for (std::size_t s = 0; s < simplices_per_cell; ++s)
            out.emplace_back(magnitudes[c * simplices_per_cell + s], simplex_measure);
    }
    return out;
}

GridFunction::GridFunction(int dim, int cells_per_side, std::vector<double> nodal_values, bool boundary_zero)
    : grid_{dim, cells_per_side}, boundary_zero_(boundary_zero), values_(std::move(nodal_values))
{
    check_grid(dim, cells_per_side);
    if (values_.size() != ipow(static_cast<std::size_t>(cells_per_side) + 1, dim))
        throw DomainError("nodal value count does not match (cells_per_side + 1)^dim");
    if (boundary_zero_) {
        std::vector<int> idx(static_cast<std::size_t>(dim));
        for (std::size_t n = 0; n < values_.size(); ++n) {
            cell_multi_index(n, dim, cells_per_side + 1, idx);
            const bool on_boundary = std::any_of(idx.begin(), idx.end(),
                                                 [&](int k) { return k == 0 || k == cells_per_side; });
            if (on_boundary && values_[n] != 0.0) throw DomainError("boundary_zero grid function is nonzero on the boundary");
        }
    }
}

GridFunction GridFunction::zeros(int dim, int cells_per_side, bool boundary_zero)
{
    check_grid(dim, cells_per_side);
    return GridFunction(dim, cells_per_side,
                        std::vector<double>(ipow(static_cast<std::size_t>(cells_per_side) + 1, dim), 0.0),
                        boundary_zero);
}

GridFunction GridFunction::sample(int dim, int cells_per_side, const std::function<double(std::span<const double>)>& f,
                                  bool boundary_zero)
{
    check_grid(dim, cells_per_side);
    const int np = cells_per_side + 1;
    std::vector<double> vals(ipow(static_cast<std::size_t>(np), dim));
    std::vector<int> idx(static_cast<std::size_t>(dim));
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (std::size_t n = 0; n < vals.size(); ++n) {
        cell_multi_index(n, dim, np, idx);
        bool on_boundary = false;
        for (int i = 0; i < dim; ++i) {
            const int k = idx[static_cast<std::size_t>(i)];
            x[static_cast<std::size_t>(i)] = static_cast<double>(k) / cells_per_side;
            on_boundary = on_boundary || k == 0 || k == cells_per_side;
        }
        vals[n] = boundary_zero && on_boundary ? 0.0 : f(x);
    }
    return GridFunction(dim, cells_per_side, std::move(vals), boundary_zero);
}

std::size_t GridFunction::cell_count() const
{
    return ipow(static_cast<std::size_t>(grid_.cells_per_side), grid_.dim);
}

std::size_t GridFunction::node_index(std::span<const int> idx) const
{
    if (idx.size() != static_cast<std::size_t>(grid_.dim)) throw DomainError("node index has wrong dimension");
    std::size_t linear = 0;
    for (int k : idx) {
        if (k < 0 || k > grid_.cells_per_side) throw DomainError("node index out of range");
        linear = linear * static_cast<std::size_t>(grid_.cells_per_side + 1) + static_cast<std::size_t>(k);
    }
    return linear;
}

double GridFunction::value(std::span<const double> x) const
{
    const int d = grid_.dim;
    const int ns = grid_.cells_per_side;
    if (x.size() != static_cast<std::size_t>(d)) throw DomainError("point has wrong dimension");
    std::vector<int> z(static_cast<std::size_t>(d));
    std::vector<double> yr(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi < 0.0 || xi > 1.0) throw DomainError("point outside the closed unit cube");
        const double s = xi * ns;
        const int zi = std::min(static_cast<int>(std::floor(s)), ns - 1);
        const double y = s - zi;
        z[static_cast<std::size_t>(i)] = zi;
        yr[static_cast<std::size_t>(i)] = (zi % 2 != 0) ? 1.0 - y : y;
    }
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return yr[static_cast<std::size_t>(a)] > yr[static_cast<std::size_t>(b)]; });

    // Walk v_0 = reflected origin, v_l = v_{l-1} + e_{order[l]} in reflected coordinates.
    std::vector<int> node(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) node[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + ((z[static_cast<std::size_t>(i)] % 2 != 0) ? 1 : 0);
    double prev = node_value(node);
    double u = prev;
    for (int l = 0; l < d; ++l) {
        const auto a = static_cast<std::size_t>(order[static_cast<std::size_t>(l)]);
        node[a] += (z[a] % 2 != 0) ? -1 : 1;
        const double cur = node_value(node);
        u += yr[a] * (cur - prev);
        prev = cur;
    }
    return u;
}

double GridFunction::sup_norm() const
{
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

GradientField GridFunction::gradient_field() const
{
    const int d = grid_.dim;
    const int ns = grid_.cells_per_side;
    const auto perms = permutations(d);
    GradientField field;
    field.grid = grid_;
    field.simplices_per_cell = perms.size();
    field.simplex_measure = std::pow(h(), d) / static_cast<double>(factorial(d));
    const std::size_t cells = cell_count();
    field.magnitudes.resize(cells * perms.size());

    const std::size_t corners = std::size_t{1} << d;
    std::vector<double> local(corners);
    std::vector<int> z(static_cast<std::size_t>(d));
    std::vector<int> node(static_cast<std::size_t>(d));
    for (std::size_t c = 0; c < cells; ++c) {
        cell_multi_index(c, d, ns, z);
        // local[mask] = u at the corner with reflected coordinates given by mask.
        for (std::size_t mask = 0; mask < corners; ++mask) {
            for (int i = 0; i < d; ++i) {
                const int bit = static_cast<int>((mask >> i) & 1U);
                const int zi = z[static_cast<std::size_t>(i)];
                node[static_cast<std::size_t>(i)] = zi + ((zi % 2 != 0) ? 1 - bit : bit);
            }
            local[mask] = node_value(node);
        }
        for (std::size_t s = 0; s < perms.size(); ++s) {
            std::size_t mask = 0;
            double sq = 0.0;
            for (int l = 0; l < d; ++l) {
                const std::size_t next = mask | (std::size_t{1} << perms[s][static_cast<std::size_t>(l)]);
                const double diff = (local[next] - local[mask]) * ns;
                sq += diff * diff;
                mask = next;
            }
            field.magnitudes[c * perms.size() + s] = std::sqrt(sq);
        }
    }
    return field;
}

std::pair<double, double> GridFunction::range_over(const CellFilter& keep) const
{
    const int d = grid_.dim;
    const int ns = grid_.cells_per_side;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::vector<int> z(static_cast<std::size_t>(d));
    std::vector<int> node(static_cast<std::size_t>(d));
    const std::size_t corners = std::size_t{1} << d;
    for (std::size_t c = 0; c < cell_count(); ++c) {
        cell_multi_index(c, d, ns, z);
        if (!keep(z)) continue;
        for (std::size_t mask = 0; mask < corners; ++mask) {
            for (int i = 0; i < d; ++i)
                node[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + static_cast<int>((mask >> i) & 1U);
            const double v = node_value(node);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (lo > hi) throw DomainError("range over an empty set of cells");
    return {lo, hi};
}

GridFunction& GridFunction::operator+=(const GridFunction& other)
{
    if (!(grid_ == other.grid_)) throw DomainError("grid functions live on different grids");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    boundary_zero_ = boundary_zero_ && other.boundary_zero_;
    return *this;
}

GridFunction& GridFunction::operator*=(double c)
{
    for (double& v : values_) v *= c;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator*(double c, GridFunction u) { return u *= c; }

double sup_norm(const GridFunction& u) { return u.sup_norm(); }

double grid_gradient_lorentz_norm(const GridFunction& u, const LorentzParams& params)
{
    return lorentz_norm(u.gradient_field().value_measure(), params);
}

double grid_gradient_lorentz_norm(const GridFunction& u, const LorentzParams& params, const GridSpec& declared)
{
    if (!(u.grid() == declared)) throw DomainError("grid function does not match the declared grid");
    return grid_gradient_lorentz_norm(u, params);
}

GridFunction linf_hat(int dim, int cells_per_side, std::span<const int> center, int radius_cells)
{
    check_grid(dim, cells_per_side);
    if (center.size() != static_cast<std::size_t>(dim)) throw DomainError("hat centre has wrong dimension");
    if (radius_cells < 1) throw DomainError("hat radius must be at least one cell");
    const int parity = center[0] % 2;
    for (int c : center) {
        if (c % 2 != parity) throw ConstructionError("hat centre coordinates must share one parity");
        if (c - radius_cells < 0 || c + radius_cells > cells_per_side)
            throw ConstructionError("hat support leaves the unit cube");
    }
    const int np = cells_per_side + 1;
    std::vector<double> vals(ipow(static_cast<std::size_t>(np), dim), 0.0);
    std::vector<int> idx(static_cast<std::size_t>(dim));
    const double h = 1.0 / cells_per_side;
    for (std::size_t n = 0; n < vals.size(); ++n) {
        cell_multi_index(n, dim, np, idx);
        int dist = 0;
        for (int i = 0; i < dim; ++i)
            dist = std::max(dist, std::abs(idx[static_cast<std::size_t>(i)] - center[static_cast<std::size_t>(i)]));
        vals[n] = dist < radius_cells ? (radius_cells - dist) * h : 0.0;
    }
    return GridFunction(dim, cells_per_side, std::move(vals), true);
}

}  // namespace snum
