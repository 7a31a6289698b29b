#include "snum/john.hpp"

#include "snum/error.hpp"
#include "snum/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

namespace snum {

namespace {

constexpr double rel_tol = 1e-12;

std::size_t linear_cell(std::span<const std::uint32_t> c, int order)
{
    std::size_t linear = 0;
    for (auto v : c) linear = (linear << order) | v;
    return linear;
}

double distance(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// Euclidean distance from x to the closed cell with integer coordinates c.
double distance_to_cell(std::span<const double> x, std::span<const long> c, double h)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lo = static_cast<double>(c[i]) * h;
        const double hi = lo + h;
        const double g = x[i] < lo ? lo - x[i] : (x[i] > hi ? x[i] - hi : 0.0);
        s += g * g;
    }
    return std::sqrt(s);
}

// Visits the in-grid cells at Chebyshev distance exactly rho from c.
template <class Visit>
void for_each_ring_cell(std::span<const long> c, long rho, long side, Visit&& visit)
{
    const std::size_t d = c.size();
    std::vector<long> cur(d);
    auto rec = [&](auto&& self, std::size_t axis, bool on_shell) -> void {
        if (axis == d) {
            visit(std::span<const long>(cur));
            return;
        }
        const long lo = std::max(0L, c[axis] - rho);
        const long hi = std::min(side - 1, c[axis] + rho);
        if (axis + 1 == d && !on_shell) {
            // The last axis has to reach the shell itself.
            for (long v : {c[axis] - rho, c[axis] + rho}) {
                if (v < lo || v > hi) continue;
                cur[axis] = v;
                visit(std::span<const long>(cur));
            }
            return;
        }
        for (long v = lo; v <= hi; ++v) {
            cur[axis] = v;
            self(self, axis + 1, on_shell || std::abs(v - c[axis]) == rho);
        }
    };
    if (rho == 0) {
        std::copy(c.begin(), c.end(), cur.begin());
        visit(std::span<const long>(cur));
        return;
    }
    rec(rec, 0, false);
}

}  // namespace

CubeUnion::CubeUnion(std::shared_ptr<const CubeOrdering> ordering, CurveIndex i, CurveIndex j)
    : ordering_(std::move(ordering)), i_(i), j_(j)
{
    if (!ordering_) throw DomainError("segment domain needs an ordering");
    if (i < 1 || i > j || j > ordering_->size()) throw DomainError("segment domain needs 1 <= i <= j <= 2^{dk}");

    // Multi-source Chebyshev BFS from the non-member cells.
    const int d = dim();
    const int k = order();
    const long side = 1L << k;
    const std::size_t cells = static_cast<std::size_t>(ordering_->size());
    constexpr int unset = std::numeric_limits<int>::max();
    clearance_.assign(cells, unset);
    std::deque<std::size_t> queue;
    for (CurveIndex t = 1; t <= ordering_->size(); ++t) {
        if (t >= i_ && t <= j_) continue;
        const std::size_t lin = linear_cell(ordering_->coords(t), k);
        clearance_[lin] = 0;
        queue.push_back(lin);
    }
    std::vector<long> c(static_cast<std::size_t>(d));
    std::vector<long> nb(static_cast<std::size_t>(d));
    const std::size_t neighbours = static_cast<std::size_t>(std::pow(3, d));
    while (!queue.empty()) {
        const std::size_t lin = queue.front();
        queue.pop_front();
        std::size_t rest = lin;
        for (int a = d - 1; a >= 0; --a) {
            c[static_cast<std::size_t>(a)] = static_cast<long>(rest & static_cast<std::size_t>(side - 1));
            rest >>= k;
        }
        for (std::size_t m = 0; m < neighbours; ++m) {
            std::size_t code = m;
            bool inside = true;
            std::size_t nlin = 0;
            for (int a = 0; a < d; ++a) {
                const long off = static_cast<long>(code % 3) - 1;
                code /= 3;
                nb[static_cast<std::size_t>(a)] = c[static_cast<std::size_t>(a)] + off;
                inside = inside && nb[static_cast<std::size_t>(a)] >= 0 && nb[static_cast<std::size_t>(a)] < side;
            }
            if (!inside) continue;
            for (int a = 0; a < d; ++a) nlin = (nlin << k) | static_cast<std::size_t>(nb[static_cast<std::size_t>(a)]);
            if (clearance_[nlin] == unset) {
                clearance_[nlin] = clearance_[lin] + 1;
                queue.push_back(nlin);
            }
        }
    }
    // Cells beyond the grid count as non-members.
    for (std::size_t lin = 0; lin < cells; ++lin) {
        std::size_t rest = lin;
        long edge = side;
        for (int a = 0; a < d; ++a) {
            const long v = static_cast<long>(rest & static_cast<std::size_t>(side - 1));
            rest >>= k;
            edge = std::min({edge, v + 1, side - v});
        }
        clearance_[lin] = std::min(clearance_[lin], static_cast<int>(edge));
    }
}

std::vector<DyadicCube> CubeUnion::cubes() const
{
    std::vector<DyadicCube> out;
    out.reserve(cube_count());
    for (CurveIndex t = i_; t <= j_; ++t) out.push_back(ordering_->cube(t));
    return out;
}

double CubeUnion::measure() const
{
    return static_cast<double>(cube_count()) * std::ldexp(1.0, -order() * dim());
}

bool CubeUnion::contains_cell(std::span<const std::uint32_t> coords) const
{
    const CurveIndex t = ordering_->index_of(coords);
    return t >= i_ && t <= j_;
}

bool CubeUnion::contains(std::span<const double> x) const
{
    return boundary_distance(x) > 0.0;
}

double CubeUnion::boundary_distance(std::span<const double> x) const
{
    const int d = dim();
    const int k = order();
    if (x.size() != static_cast<std::size_t>(d)) throw DomainError("point has the wrong dimension");
    const long side = 1L << k;
    const double h = std::ldexp(1.0, -k);
    double best = std::numeric_limits<double>::infinity();
    std::vector<long> c(static_cast<std::size_t>(d));
    std::vector<std::uint32_t> cu(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const double xa = x[static_cast<std::size_t>(a)];
        if (!(xa > 0.0 && xa < 1.0)) return 0.0;
        best = std::min({best, xa, 1.0 - xa});
        c[static_cast<std::size_t>(a)] = std::min(side - 1, static_cast<long>(std::floor(xa * static_cast<double>(side))));
        cu[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(c[static_cast<std::size_t>(a)]);
    }
    const CurveIndex home = ordering_->index_of_unchecked(cu);
    if (home < i_ || home > j_) return 0.0;

    std::vector<std::uint32_t> probe(static_cast<std::size_t>(d));
    for (long rho = clearance(linear_cell(cu, k));; ++rho) {
        if (static_cast<double>(rho - 1) * h >= best) break;
        for_each_ring_cell(c, rho, side, [&](std::span<const long> cell) {
            for (int a = 0; a < d; ++a) probe[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(cell[static_cast<std::size_t>(a)]);
            const CurveIndex t = ordering_->index_of_unchecked(probe);
            if (t >= i_ && t <= j_) return;
            best = std::min(best, distance_to_cell(x, cell, h));
        });
    }
    return best;
}

bool CubeUnion::is_connected() const
{
    const int d = dim();
    std::vector<char> seen(cube_count(), 0);
    std::vector<CurveIndex> stack{i_};
    seen[0] = 1;
    std::size_t reached = 1;
    const std::uint32_t side = std::uint32_t{1} << order();
    while (!stack.empty()) {
        const CurveIndex t = stack.back();
        stack.pop_back();
        auto base = ordering_->coords(t);
        std::vector<std::uint32_t> nb(base.begin(), base.end());
        for (int a = 0; a < d; ++a) {
            for (int s : {-1, 1}) {
                const auto v = static_cast<std::int64_t>(base[static_cast<std::size_t>(a)]) + s;
                if (v < 0 || v >= side) continue;
                nb[static_cast<std::size_t>(a)] = static_cast<std::uint32_t>(v);
                const CurveIndex u = ordering_->index_of_unchecked(nb);
                nb[static_cast<std::size_t>(a)] = base[static_cast<std::size_t>(a)];
                if (u < i_ || u > j_ || seen[u - i_]) continue;
                seen[u - i_] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == cube_count();
}

CubeUnion segment_domain(std::shared_ptr<const CubeOrdering> ordering, CurveIndex i, CurveIndex j)
{
    return CubeUnion(std::move(ordering), i, j);
}

CubeUnion segment_domain(const CubeOrdering& ordering, CurveIndex i, CurveIndex j)
{
    return CubeUnion(std::make_shared<const CubeOrdering>(ordering), i, j);
}

std::vector<DyadicBlock> dyadic_decomposition(const CubeOrdering& o, CurveIndex i, CurveIndex j)
{
    if (i < 1 || i > j || j > o.size()) throw DomainError("decomposition needs 1 <= i <= j <= 2^{dk}");
    const int d = o.dim();
    const int k = o.order();
    std::vector<DyadicBlock> blocks;
    std::uint64_t p = i - 1;
    const std::uint64_t end = j;
    while (p < end) {
        int s = 0;
        while (s < k) {
            const std::uint64_t size = std::uint64_t{1} << (d * (s + 1));
            if (p % size != 0 || p + size > end) break;
            ++s;
        }
        const std::uint64_t size = std::uint64_t{1} << (d * s);
        DyadicBlock b;
        b.first = static_cast<CurveIndex>(p + 1);
        b.last = static_cast<CurveIndex>(p + size);
        b.cube = o.cube(b.first).ancestor(k - s);
        for (CurveIndex t = b.first + 1; t <= b.last; ++t) {
            auto c = o.coords(t);
            for (int a = 0; a < d; ++a)
                if ((c[static_cast<std::size_t>(a)] >> s) != b.cube.coords[static_cast<std::size_t>(a)])
                    throw ConstructionError("ordering lacks prefix nesting: aligned run at index " +
                                            std::to_string(b.first) + " is not one dyadic cube");
        }
        blocks.push_back(std::move(b));
        p += size;
    }
    return blocks;
}

double uniform_john_constant(int d)
{
    if (d < 1) throw DomainError("dimension must be >= 1");
    // Pivot runs, the final half-cube step and three diagonal terms per
    // generation, summed geometrically; the factor 4 absorbs the ratio of a
    // block's side to the distance from its centre to the boundary.
    const double c = 2.0 * (std::ldexp(1.0, d) - 1.0) + 0.5 + 3.0 * std::sqrt(static_cast<double>(d));
    return 4.0 * c;
}

double cube_john_constant(int d)
{
    if (d < 1) throw DomainError("dimension must be >= 1");
    return std::sqrt(static_cast<double>(d));
}

std::size_t JohnCertificate::block_of(std::span<const double> x) const
{
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].cube.contains(x)) return b;
    throw DomainError("point lies outside every block of the certificate");
}

std::vector<Point> JohnCertificate::curve(std::span<const double> x) const
{
    std::vector<Point> path;
    const auto& tail = block_paths[block_of(x)];
    path.reserve(tail.size() + 1);
    path.emplace_back(x.begin(), x.end());
    path.insert(path.end(), tail.begin(), tail.end());
    return path;
}

JohnCertificate john_bound_constructive(const CubeUnion& omega)
{
    const CubeOrdering& o = omega.ordering();
    const int d = o.dim();
    JohnCertificate cert;
    cert.dim = d;
    cert.blocks = dyadic_decomposition(o, omega.first(), omega.last());
    cert.constant = uniform_john_constant(d);
    const auto& blocks = cert.blocks;

    int top = std::numeric_limits<int>::max();
    for (const auto& b : blocks) top = std::min(top, b.cube.level);
    std::vector<std::size_t> tops;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (blocks[b].cube.level == top) tops.push_back(b);
    // Median top-level block: each side then holds at most 2^d - 1 top-level blocks.
    cert.pivot = tops[(tops.size() + 1) / 2 - 1];
    cert.center = blocks[cert.pivot].cube.center();

    for (int dir : {-1, 1}) {
        GenerationRun run{top, 0, dir};
        for (long b = static_cast<long>(cert.pivot); b >= 0 && b < static_cast<long>(blocks.size()); b += dir) {
            const int level = blocks[static_cast<std::size_t>(b)].cube.level;
            if (level != run.level) {
                cert.runs.push_back(run);
                run = GenerationRun{level, 0, dir};
            }
            ++run.count;
        }
        cert.runs.push_back(run);
    }

    // Crossing point between consecutive blocks e < l along the curve.
    auto face_point = [&](std::size_t e, std::size_t l) -> std::optional<Point> {
        const auto& be = blocks[e].cube;
        const auto& bl = blocks[l].cube;
        if (be.level == bl.level) return std::nullopt;
        auto ce = o.coords(blocks[e].last);
        auto cl = o.coords(blocks[l].first);
        std::size_t axis = 0;
        int sign = 0;
        for (std::size_t a = 0; a < static_cast<std::size_t>(d); ++a) {
            if (ce[a] == cl[a]) continue;
            axis = a;
            sign = cl[a] > ce[a] ? 1 : -1;
        }
        if (sign == 0) throw ConstructionError("consecutive blocks do not share a face");
        // Centre of the smaller block's face on the shared hyperplane.
        const bool e_smaller = be.level > bl.level;
        const DyadicCube& small = e_smaller ? be : bl;
        Point p = small.center();
        p[axis] += (e_smaller ? sign : -sign) * small.side() / 2.0;
        return p;
    };

    cert.block_paths.assign(blocks.size(), {});
    cert.block_paths[cert.pivot] = {cert.center};
    for (int dir : {-1, 1}) {
        for (long b = static_cast<long>(cert.pivot) + dir; b >= 0 && b < static_cast<long>(blocks.size()); b += dir) {
            const auto bi = static_cast<std::size_t>(b);
            const auto toward = static_cast<std::size_t>(b - dir);
            std::vector<Point> path{blocks[bi].cube.center()};
            const auto fp = dir < 0 ? face_point(bi, toward) : face_point(toward, bi);
            if (fp) path.push_back(*fp);
            const auto& rest = cert.block_paths[toward];
            path.insert(path.end(), rest.begin(), rest.end());
            cert.block_paths[bi] = std::move(path);
        }
    }
    return cert;
}

JohnVerification verify_john_certificate(const CubeUnion& omega, const JohnCertificate& cert, std::size_t samples,
                                         std::uint64_t seed)
{
    if (samples < 1) throw DomainError("verification needs at least one sample");
    const int d = omega.dim();
    if (cert.dim != d) throw CertificateInvalid("certificate dimension does not match the domain");
    if (omega.boundary_distance(cert.center) <= 0.0) throw CertificateInvalid("certificate centre lies outside the domain");

    JohnVerification result;
    auto consider = [&](JohnVerification& acc, const Point& x, const Point& g) {
        const double num = distance(x, g);
        ++acc.evaluations;
        if (num == 0.0) return;
        const double dist = omega.boundary_distance(g);
        if (dist <= 0.0) throw CertificateInvalid("certificate curve leaves the domain");
        const double ratio = num / dist;
        if (ratio > acc.worst_ratio) {
            acc.worst_ratio = ratio;
            acc.worst_start = x;
            acc.worst_point = g;
        }
    };
    auto merge = [](JohnVerification& into, const JohnVerification& from) {
        into.evaluations += from.evaluations;
        if (from.worst_ratio > into.worst_ratio) {
            into.worst_ratio = from.worst_ratio;
            into.worst_start = from.worst_start;
            into.worst_point = from.worst_point;
        }
    };

    // Structural pass: every cube centre against every vertex of its curve,
    // and a few interior points of every segment.
    const auto cubes = omega.cubes();
    for (const auto& q : cubes) {
        const Point x = q.center();
        const auto path = cert.curve(x);
        for (std::size_t v = 1; v < path.size(); ++v) {
            consider(result, x, path[v]);
            for (int s = 1; s < 4; ++s) {
                Point mid(static_cast<std::size_t>(d));
                for (std::size_t a = 0; a < mid.size(); ++a)
                    mid[a] = path[v - 1][a] + (path[v][a] - path[v - 1][a]) * s / 4.0;
                consider(result, x, mid);
            }
        }
    }

    // Random pairs, drawn sequentially so results do not depend on threads.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, cubes.size() - 1);
    std::vector<double> draws(samples * static_cast<std::size_t>(d + 1));
    std::vector<std::size_t> which(samples);
    for (std::size_t s = 0; s < samples; ++s) {
        which[s] = pick(rng);
        for (int a = 0; a <= d; ++a) draws[s * static_cast<std::size_t>(d + 1) + static_cast<std::size_t>(a)] = unit(rng);
    }
    const std::size_t workers = std::min(thread_budget(), samples);
    std::vector<JohnVerification> partial(std::max<std::size_t>(workers, 1));
    parallel_chunks(samples, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
        JohnVerification& acc = partial[chunk];
        Point x(static_cast<std::size_t>(d));
        for (std::size_t s = begin; s < end; ++s) {
            const auto& q = cubes[which[s]];
            const double* u = &draws[s * static_cast<std::size_t>(d + 1)];
            for (int a = 0; a < d; ++a)
                x[static_cast<std::size_t>(a)] = (q.coords[static_cast<std::size_t>(a)] + u[a]) * q.side();
            const auto path = cert.curve(x);
            std::vector<double> cum{0.0};
            for (std::size_t v = 1; v < path.size(); ++v) cum.push_back(cum.back() + distance(path[v - 1], path[v]));
            const double target = u[d] * cum.back();
            std::size_t seg = 1;
            while (seg + 1 < path.size() && cum[seg] < target) ++seg;
            const double len = cum[seg] - cum[seg - 1];
            const double w = len > 0.0 ? std::clamp((target - cum[seg - 1]) / len, 0.0, 1.0) : 1.0;
            Point g(static_cast<std::size_t>(d));
            for (std::size_t a = 0; a < g.size(); ++a) g[a] = path[seg - 1][a] + w * (path[seg][a] - path[seg - 1][a]);
            consider(acc, x, g);
        }
    });
    for (const auto& p : partial) merge(result, p);
    result.passed = result.worst_ratio <= cert.constant * (1.0 + rel_tol);
    return result;
}

double unit_ball_volume(int d)
{
    if (d < 1) throw DomainError("dimension must be >= 1");
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double cube_oscillation_constant(int d)
{
    // 2 * diam^d / (d |Q|) * || |x|^{1-d} ||_{d',inf} for the unit cube.
    return 2.0 * std::pow(static_cast<double>(d), d / 2.0 - 1.0) * std::pow(unit_ball_volume(d), 1.0 - 1.0 / d);
}

double oscillation_constant(int d, std::size_t blocks)
{
    if (blocks < 1) throw DomainError("oscillation constant needs at least one block");
    return cube_oscillation_constant(d) * std::pow(static_cast<double>(blocks), 1.0 - 1.0 / d);
}

OscillationReport oscillation_check(const CubeUnion& omega, const GridFunction& u)
{
    const int d = omega.dim();
    const int k = omega.order();
    if (u.dim() != d) throw DomainError("grid function and domain differ in dimension");
    const int ns = u.cells_per_side();
    const int side = 1 << k;
    if (ns % side != 0) throw DomainError("grid is not nested in the level-k cubes");
    const int ratio = ns / side;

    std::vector<std::uint32_t> cube(static_cast<std::size_t>(d));
    const CurveIndex lo = omega.first();
    const CurveIndex hi = omega.last();
    const auto& o = omega.ordering();
    CellFilter inside = [&](std::span<const int> z) {
        for (std::size_t a = 0; a < z.size(); ++a) cube[a] = static_cast<std::uint32_t>(z[a] / ratio);
        const CurveIndex t = o.index_of_unchecked(cube);
        return t >= lo && t <= hi;
    };

    OscillationReport r;
    const auto [mn, mx] = u.range_over(inside);
    r.oscillation = mx - mn;
    r.gradient_norm = lorentz_norm(u.gradient_field().value_measure(inside), LorentzParams::make(d, 1));
    r.constant = oscillation_constant(d, dyadic_decomposition(o, lo, hi).size());
    r.slack = r.constant * r.gradient_norm - r.oscillation;
    r.holds = r.oscillation <= r.constant * r.gradient_norm * (1.0 + rel_tol) + 1e-15;
    return r;
}

}  // namespace snum
