#include "snum/snumbers.hpp"

#include "snum/error.hpp"
#include "snum/john.hpp"

#include <cmath>
#include <memory>

namespace snum {

using nlohmann::json;

namespace {

constexpr double rel_tol = 1e-12;

ChainLink link(std::string name, double lhs, double rhs)
{
    return {std::move(name), lhs, rhs, rhs - lhs, lhs <= rhs * (1.0 + rel_tol) + 1e-15};
}

json to_json(const ChainLink& l)
{
    return json{{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"slack", l.slack}, {"holds", l.holds}};
}

}  // namespace

double embedding_norm_upper(int d)
{
    if (d < 1) throw DomainError("dimension must be >= 1");
    return 1.0 / (static_cast<double>(d) * std::pow(unit_ball_volume(d), 1.0 / d));
}

HatConstruction hat_construction(int d, int m, int cells_per_side)
{
    if (d < 1 || m < 1) throw DomainError("hat construction needs d >= 1 and m >= 1");
    if (cells_per_side == 0) cells_per_side = 2 * m;
    if (cells_per_side < 0 || cells_per_side % (2 * m) != 0)
        throw ConstructionError("overlapping balls: radius 1/(2m) hats need 2m | cells_per_side (m = " + std::to_string(m) +
                                ", cells_per_side = " + std::to_string(cells_per_side) + ")");
    HatConstruction h;
    h.dim = d;
    h.m = m;
    h.cells_per_side = cells_per_side;
    h.radius_cells = cells_per_side / (2 * m);
    h.radius = static_cast<double>(h.radius_cells) / static_cast<double>(cells_per_side);
    std::vector<int> k(static_cast<std::size_t>(d), 1);
    for (;;) {
        std::vector<int> c(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = (2 * k[static_cast<std::size_t>(i)] - 1) * h.radius_cells;
        h.hats.push_back(linf_hat(d, cells_per_side, c, h.radius_cells));
        h.centers.push_back(std::move(c));
        int a = d - 1;
        while (a >= 0 && k[static_cast<std::size_t>(a)] == m) k[static_cast<std::size_t>(a--)] = 1;
        if (a < 0) break;
        ++k[static_cast<std::size_t>(a)];
    }
    return h;
}

SNumberBound isomorphism_lower_ddim(int d, int m, const LorentzParams& X, int cells_per_side, ArithmeticMode mode)
{
    if (d < 2) throw DomainError("cube embedding needs d >= 2");
    if (!(X.p > d || (X.p == d && X.q == 1)))
        throw UnsupportedRegime("L^{p,q} with p = " + std::to_string(X.p) + ", q = " + std::to_string(X.q) +
                                " does not embed into C for d = " + std::to_string(d));
    const HatConstruction h = hat_construction(d, m, cells_per_side);
    const std::size_t n = h.hats.size();

    // A V B e_k = e_k: point evaluation of the hats divided by r.
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double v = h.hats[a].node_value(h.centers[b]) / h.radius;
            if (v != (a == b ? 1.0 : 0.0)) throw CertificateInvalid("A V B is not the identity");
        }

    // ||B y||_X = ||sum y_k grad hat_k||_X <= ||y||_inf ||chi_Q||_X / r since
    // |grad hat_k| = 1 on disjoint supports tiling Q.
    const double chi = indicator_lorentz_norm(1.0, X);
    GridFunction sum = GridFunction::zeros(d, h.cells_per_side);
    for (const auto& u : h.hats) sum += u;
    const double grid_norm = grid_gradient_lorentz_norm(sum, X);

    SNumberBound b;
    b.kind = SNumberKind::isomorphism;
    b.n = n;
    b.operator_label = cube_embedding_label(d, X);
    b.anchor = "isomorphism lower bound: hat synthesis and centre evaluation";
    const auto chi_exact = unit_indicator_norm_exact(X);
    if (mode == ArithmeticMode::exact && chi_exact) {
        b.mode = ArithmeticMode::exact;
        b.lower_exact = Rational(1, 2 * m) / *chi_exact;
        b.lower = b.lower_exact->get_d();
    } else {
        b.mode = ArithmeticMode::floating;
        b.lower = h.radius / chi;
    }
    // i_n <= i_1 = ||T||, explicit only for L^{d,1}.
    if (X.p == d) b.upper = embedding_norm_upper(d);
    b.witness = json{{"m", m},
                     {"radius", h.radius},
                     {"radius_cells", h.radius_cells},
                     {"cells_per_side", h.cells_per_side},
                     {"norm_a", 1},
                     {"norm_b", chi / h.radius},
                     {"chi_q_norm", chi},
                     {"chi_q_norm_exact", chi_exact ? json(to_string(*chi_exact)) : json(nullptr)},
                     {"sum_of_hats_gradient_norm", grid_norm},
                     {"identity_verified", true},
                     {"scaled_lower", b.lower * std::pow(static_cast<double>(n), 1.0 / d)}};
    return b;
}

double hat_subspace_bernstein_ratio(const HatConstruction& hats, const LorentzParams& X)
{
    GridFunction u = GridFunction::zeros(hats.dim, hats.cells_per_side);
    for (const auto& h : hats.hats) u += h;
    return u.sup_norm() / grid_gradient_lorentz_norm(u, X);
}

GridSubspace random_grid_subspace(std::size_t n, int d, int cells_per_side, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    GridSubspace E;
    for (std::size_t i = 0; i < n; ++i)
        E.basis.push_back(GridFunction::sample(
            d, cells_per_side, [&](std::span<const double>) { return unit(rng); }, true));
    return E;
}

SNumberBound bernstein_upper_ddim(const GridSubspace& E, int k, const ZigzagOptions& options)
{
    const std::size_t n = E.dim();
    if (n < 1) throw DomainError("empty subspace");
    const GridSpec grid = E.basis.front().grid();
    for (const auto& u : E.basis) {
        if (u.grid() != grid) throw DomainError("basis elements live on different grids");
        if (!u.boundary_zero()) throw DomainError("basis elements must vanish on the boundary");
    }
    const int d = grid.dim;
    if (d < 2) throw DomainError("cube embedding needs d >= 2");
    if (k < 1 || grid.cells_per_side % (1 << k) != 0)
        throw DomainError("cells_per_side must be a multiple of 2^k");
    const LorentzParams X = LorentzParams::make(d, 1);

    SNumberBound b;
    b.kind = SNumberKind::bernstein;
    b.n = n;
    b.mode = ArithmeticMode::floating;
    b.operator_label = cube_embedding_label(d, X);
    b.anchor = "Bernstein upper bound: Hilbert-ordered zigzag and oscillation chain";
    json w;
    w["scope"] = "inf of ||u||_inf/||grad u||_{d,1} over the given subspace";
    w["level"] = k;

    if (n == 1) {
        b.upper = embedding_norm_upper(d);
        const GridFunction& u = E.basis.front();
        w["direct_ratio"] = u.sup_norm() / grid_gradient_lorentz_norm(u, X);
        w["reason"] = "embedding norm bound";
        b.witness = std::move(w);
        return b;
    }

    auto ordering = std::make_shared<const CubeOrdering>(hilbert_order(d, k));
    const CurveIndex cubes = ordering->size();
    Eigen::MatrixXd M(static_cast<Eigen::Index>(cubes), static_cast<Eigen::Index>(n));
    for (CurveIndex l = 1; l <= cubes; ++l) {
        const auto x = ordering->cube(l).center();
        for (std::size_t i = 0; i < n; ++i)
            M(static_cast<Eigen::Index>(l - 1), static_cast<Eigen::Index>(i)) = E.basis[i].value(x);
    }
    const ZigzagWitness z = zigzag_find(M, options);
    w["epsilon"] = options.epsilon;
    w["exhaustive"] = z.exhaustive;
    w["index_sets_evaluated"] = z.index_sets_evaluated;
    if (z.indices.empty()) {
        b.status = BoundStatus::inconclusive;
        b.witness = std::move(w);
        return b;
    }

    GridFunction v = GridFunction::zeros(d, grid.cells_per_side);
    for (std::size_t i = 0; i < n; ++i) v += z.coefficients(static_cast<Eigen::Index>(i)) * E.basis[i];
    const double grad = grid_gradient_lorentz_norm(v, X);
    const double vsup = v.sup_norm();

    double alt_sum = 0.0;
    double osc_sum = 0.0;
    double cl_sum = 0.0;
    double c_pow = 0.0;
    double l_pow = 0.0;
    double l_pow_odd = 0.0;
    double l_pow_even = 0.0;
    const double dp = static_cast<double>(d) / (d - 1);
    json domains = json::array();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto lo = static_cast<CurveIndex>(z.indices[j] + 1);
        const auto hi = static_cast<CurveIndex>(z.indices[j + 1] + 1);
        alt_sum += std::abs(z.values(static_cast<Eigen::Index>(z.indices[j + 1])) - z.values(static_cast<Eigen::Index>(z.indices[j])));
        const CubeUnion omega(ordering, lo, hi);
        const OscillationReport r = oscillation_check(omega, v);
        osc_sum += r.oscillation;
        cl_sum += r.constant * r.gradient_norm;
        c_pow += std::pow(r.constant, dp);
        const double lp = std::pow(r.gradient_norm, d);
        l_pow += lp;
        (j % 2 == 0 ? l_pow_odd : l_pow_even) += lp;
        domains.push_back(json{{"first", lo},
                               {"last", hi},
                               {"blocks", dyadic_decomposition(*ordering, lo, hi).size()},
                               {"oscillation", r.oscillation},
                               {"gradient_norm", r.gradient_norm},
                               {"constant", r.constant},
                               {"holds", r.holds}});
    }
    const double K = std::pow(c_pow, 1.0 / dp);
    const double grad_pow = std::pow(grad, d);
    // Odd-numbered and even-numbered domains are pairwise disjoint up to null sets.
    std::vector<ChainLink> links{
        // Interpolation holds to 1e-9 per node.
        link("alternation", 2.0 * static_cast<double>(n - 1) * (1.0 - 1e-9), alt_sum),
        link("oscillation", alt_sum, osc_sum),
        link("oscillation-gradient", osc_sum, cl_sum),
        link("hoelder", cl_sum, K * std::pow(l_pow, 1.0 / d)),
        link("disjoint odd family", l_pow_odd, grad_pow),
        link("disjoint even family", l_pow_even, grad_pow),
        link("overlap two", l_pow, 2.0 * grad_pow),
    };
    bool all = true;
    json jl = json::array();
    for (const auto& l : links) {
        all = all && l.holds;
        jl.push_back(to_json(l));
    }
    const double bound = vsup * K * std::pow(2.0, 1.0 / d) / alt_sum;
    const double direct = vsup / grad;
    b.upper = bound;
    if (!all) b.status = BoundStatus::uncertified;
    else b.status = z.certified ? BoundStatus::certified : BoundStatus::inconclusive;

    json idx = json::array();
    json centers = json::array();
    for (auto i : z.indices) {
        idx.push_back(i + 1);
        centers.push_back(ordering->cube(static_cast<CurveIndex>(i + 1)).center());
    }
    w["curve_indices"] = idx;
    w["centers"] = centers;
    w["coefficients"] = std::vector<double>(z.coefficients.data(), z.coefficients.data() + z.coefficients.size());
    w["zigzag_sup_norm"] = z.sup_norm_value;
    w["sup_norm_v"] = vsup;
    w["gradient_norm_v"] = grad;
    w["d_prime"] = dp;
    w["constant_norm"] = K;
    w["domains"] = domains;
    w["links"] = jl;
    w["chain_bound"] = bound;
    w["direct_ratio"] = direct;
    w["direct_below_chain"] = direct <= bound * (1.0 + rel_tol);
    b.witness = std::move(w);
    return b;
}

std::vector<ChainLink> chain_links(const SNumberBound& bound)
{
    std::vector<ChainLink> out;
    if (!bound.witness.contains("links")) return out;
    for (const auto& j : bound.witness.at("links"))
        out.push_back({j.at("name").get<std::string>(), j.at("lhs").get<double>(), j.at("rhs").get<double>(),
                       j.at("slack").get<double>(), j.at("holds").get<bool>()});
    return out;
}

}  // namespace snum
