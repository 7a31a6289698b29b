#include "snum/hilbert.hpp"

#include "snum/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace snum {

double DyadicCube::side() const { return std::ldexp(1.0, -level); }

double DyadicCube::volume() const { return std::ldexp(1.0, -level * dim()); }

std::vector<double> DyadicCube::center() const
{
    std::vector<double> c(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) c[i] = (coords[i] + 0.5) * side();
    return c;
}

std::vector<double> DyadicCube::lower_corner() const
{
    std::vector<double> c(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) c[i] = coords[i] * side();
    return c;
}

bool DyadicCube::contains(std::span<const double> x) const
{
    if (x.size() != coords.size()) return false;
    const double s = side();
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (x[i] < coords[i] * s || x[i] > (coords[i] + 1) * s) return false;
    return true;
}

bool DyadicCube::contains(const DyadicCube& finer) const
{
    return finer.level >= level && finer.dim() == dim() && finer.ancestor(level) == *this;
}

DyadicCube DyadicCube::ancestor(int coarser_level) const
{
    if (coarser_level > level || coarser_level < 0) throw DomainError("ancestor level must lie in [0, level]");
    DyadicCube a{coarser_level, coords};
    for (auto& c : a.coords) c >>= (level - coarser_level);
    return a;
}

std::string to_string(const DyadicCube& cube)
{
    std::ostringstream os;
    os << "level " << cube.level << " (";
    for (std::size_t i = 0; i < cube.coords.size(); ++i) os << (i ? "," : "") << cube.coords[i];
    os << ")";
    return os.str();
}

namespace {

void check_capacity(int d, int k)
{
    if (d < 1 || k < 1) throw CapacityError("cube ordering needs d >= 1 and k >= 1");
    if (d * k > max_ordering_bits)
        throw CapacityError("cube ordering with d*k = " + std::to_string(d * k) + " exceeds the table limit of 2^" +
                            std::to_string(max_ordering_bits) + " cubes");
}

// Skilling's transpose-to-axes map. X[0] carries the most significant bit of
// each group of d index bits.
void transpose_to_axes(std::vector<std::uint32_t>& x, int bits)
{
    const int n = static_cast<int>(x.size());
    const std::uint32_t top = std::uint32_t{2} << (bits - 1);
    // Gray decode.
    std::uint32_t t = x[static_cast<std::size_t>(n - 1)] >> 1;
    for (int i = n - 1; i > 0; --i) x[static_cast<std::size_t>(i)] ^= x[static_cast<std::size_t>(i - 1)];
    x[0] ^= t;
    // Undo excess work.
    for (std::uint32_t q = 2; q != top; q <<= 1) {
        const std::uint32_t p = q - 1;
        for (int i = n - 1; i >= 0; --i) {
            auto& xi = x[static_cast<std::size_t>(i)];
            if (xi & q) {
                x[0] ^= p;
            } else {
                t = (x[0] ^ xi) & p;
                x[0] ^= t;
                xi ^= t;
            }
        }
    }
}

}  // namespace

CubeOrdering::CubeOrdering(int dim, int order, std::vector<std::uint32_t> flat_coords, std::string name)
    : dim_(dim), order_(order), name_(std::move(name)), coords_(std::move(flat_coords))
{
    check_capacity(dim, order);
    const std::size_t count = std::size_t{1} << (dim * order);
    if (coords_.size() != count * static_cast<std::size_t>(dim))
        throw ConstructionError("ordering table has the wrong size");
    const std::uint32_t side = std::uint32_t{1} << order;
    inverse_.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t linear = 0;
        for (int a = 0; a < dim; ++a) {
            const auto c = coords_[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)];
            if (c >= side) throw ConstructionError("ordering coordinate outside the level-k grid");
            linear = (linear << order) | c;
        }
        if (inverse_[linear] != 0) throw ConstructionError("ordering visits a cube twice");
        inverse_[linear] = static_cast<CurveIndex>(i + 1);
    }
}

std::span<const std::uint32_t> CubeOrdering::coords(CurveIndex index) const
{
    if (index < 1 || index > size()) throw DomainError("curve index out of range");
    return {coords_.data() + static_cast<std::size_t>(index - 1) * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
}

DyadicCube CubeOrdering::cube(CurveIndex index) const
{
    auto c = coords(index);
    return DyadicCube{order_, std::vector<std::uint32_t>(c.begin(), c.end())};
}

CurveIndex CubeOrdering::index_of(std::span<const std::uint32_t> coords) const
{
    if (coords.size() != static_cast<std::size_t>(dim_)) throw DomainError("cube has the wrong dimension");
    for (auto c : coords)
        if (c >= (std::uint32_t{1} << order_)) throw DomainError("cube coordinate outside the level-k grid");
    return index_of_unchecked(coords);
}

CurveIndex CubeOrdering::index_of(const DyadicCube& cube) const
{
    if (cube.level != order_) throw DomainError("cube is not at the ordering level");
    return index_of(cube.coords);
}

CubeOrdering CubeOrdering::with_swapped(CurveIndex a, CurveIndex b) const
{
    auto ca = coords(a);
    auto cb = coords(b);
    std::vector<std::uint32_t> flat = coords_;
    const auto d = static_cast<std::size_t>(dim_);
    std::copy(cb.begin(), cb.end(), flat.begin() + static_cast<std::ptrdiff_t>((a - 1) * d));
    std::copy(ca.begin(), ca.end(), flat.begin() + static_cast<std::ptrdiff_t>((b - 1) * d));
    return CubeOrdering(dim_, order_, std::move(flat), name_ + "+swap");
}

CubeOrdering hilbert_order(int d, int k)
{
    check_capacity(d, k);
    const std::size_t count = std::size_t{1} << (d * k);
    std::vector<std::uint32_t> flat(count * static_cast<std::size_t>(d));
    std::vector<std::uint32_t> x(static_cast<std::size_t>(d));
    for (std::size_t h = 0; h < count; ++h) {
        if (d == 1) {
            flat[h] = static_cast<std::uint32_t>(h);
            continue;
        }
        // Bit j of x[i] is index bit j*d + (d-1-i).
        std::fill(x.begin(), x.end(), 0U);
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d; ++i)
                if ((h >> (j * d + (d - 1 - i))) & 1U) x[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
        transpose_to_axes(x, k);
        std::copy(x.begin(), x.end(), flat.begin() + static_cast<std::ptrdiff_t>(h * static_cast<std::size_t>(d)));
    }
    return CubeOrdering(d, k, std::move(flat), "hilbert");
}

CubeOrdering row_major_order(int d, int k)
{
    check_capacity(d, k);
    const std::size_t count = std::size_t{1} << (d * k);
    const std::uint32_t mask = (std::uint32_t{1} << k) - 1;
    std::vector<std::uint32_t> flat(count * static_cast<std::size_t>(d));
    for (std::size_t h = 0; h < count; ++h)
        for (int i = 0; i < d; ++i)
            flat[h * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(h >> ((d - 1 - i) * k)) & mask;
    return CubeOrdering(d, k, std::move(flat), "row-major");
}

CubeOrdering serpentine_order(int d, int k)
{
    check_capacity(d, k);
    const std::size_t count = std::size_t{1} << (d * k);
    const std::uint32_t side = std::uint32_t{1} << k;
    const std::uint32_t mask = side - 1;
    std::vector<std::uint32_t> flat(count * static_cast<std::size_t>(d));
    for (std::size_t h = 0; h < count; ++h) {
        // Digit i of h in base 2^k, most significant first; a digit runs
        // backwards when the sum of the more significant digits is odd.
        std::uint32_t prefix_sum = 0;
        for (int i = 0; i < d; ++i) {
            std::uint32_t digit = static_cast<std::uint32_t>(h >> ((d - 1 - i) * k)) & mask;
            const std::uint32_t coord = (prefix_sum % 2 == 1) ? mask - digit : digit;
            flat[h * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] = coord;
            prefix_sum += digit;
        }
    }
    return CubeOrdering(d, k, std::move(flat), "serpentine");
}

AdjacencyCheck check_face_adjacency(const CubeOrdering& o)
{
    for (CurveIndex i = 1; i < o.size(); ++i) {
        auto a = o.coords(i);
        auto b = o.coords(i + 1);
        int differing = 0;
        bool unit = true;
        for (int c = 0; c < o.dim(); ++c) {
            const auto x = a[static_cast<std::size_t>(c)];
            const auto y = b[static_cast<std::size_t>(c)];
            if (x == y) continue;
            ++differing;
            unit = unit && (x + 1 == y || y + 1 == x);
        }
        if (differing != 1 || !unit) return AdjacencyCheck{false, i};
    }
    return AdjacencyCheck{};
}

NestingCheck check_prefix_nesting(const CubeOrdering& o)
{
    const int d = o.dim();
    const int k = o.order();
    for (int l = 1; l < k; ++l) {
        const int shift = k - l;
        const std::size_t block = std::size_t{1} << (d * shift);
        // Contiguity of every block <=> each aligned run of `block` indices has one ancestor.
        for (CurveIndex start = 1; start <= o.size(); start += static_cast<CurveIndex>(block)) {
            const DyadicCube anc = o.cube(start).ancestor(l);
            for (std::size_t t = 1; t < block; ++t) {
                auto c = o.coords(static_cast<CurveIndex>(start + t));
                bool same = true;
                for (int a = 0; a < d && same; ++a)
                    same = (c[static_cast<std::size_t>(a)] >> shift) == anc.coords[static_cast<std::size_t>(a)];
                if (!same) return NestingCheck{false, anc};
            }
        }
    }
    return NestingCheck{};
}

std::vector<DyadicCube> induced_block_order(const CubeOrdering& o, int level)
{
    if (level < 0 || level > o.order()) throw DomainError("level outside [0, order]");
    std::vector<DyadicCube> seq;
    for (CurveIndex i = 1; i <= o.size(); ++i) {
        DyadicCube a = o.cube(i).ancestor(level);
        if (std::find(seq.begin(), seq.end(), a) == seq.end()) seq.push_back(std::move(a));
    }
    return seq;
}

bool same_up_to_cube_symmetry(const std::vector<DyadicCube>& sequence, const CubeOrdering& o)
{
    const int d = o.dim();
    if (sequence.size() != o.size()) return false;
    const std::uint32_t mask = (std::uint32_t{1} << o.order()) - 1;
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (std::uint32_t flips = 0; flips < (std::uint32_t{1} << d); ++flips) {
            bool match = true;
            for (CurveIndex i = 1; i <= o.size() && match; ++i) {
                auto c = o.coords(i);
                const auto& s = sequence[i - 1].coords;
                for (int a = 0; a < d && match; ++a) {
                    std::uint32_t v = c[static_cast<std::size_t>(perm[static_cast<std::size_t>(a)])];
                    if ((flips >> a) & 1U) v = mask - v;
                    match = v == s[static_cast<std::size_t>(a)];
                }
            }
            if (match) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace snum
