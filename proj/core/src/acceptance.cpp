#include "snum/acceptance.hpp"

#include "snum/axioms.hpp"
#include "snum/error.hpp"
#include "snum/hilbert.hpp"
#include "snum/john.hpp"
#include "snum/lorentz.hpp"
#include "snum/volterra.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace snum {

namespace {

// Pinned tolerances.
constexpr double zigzag_epsilon = 0.05;
constexpr double bernstein_factor = 1.05;
constexpr double gelfand_threshold = 0.499;
constexpr double gelfand_epsilon = 1e-3;
constexpr double kolmogorov_threshold = 0.249;
constexpr unsigned kolmogorov_k_max = 10;
constexpr double john_slack = 1e-12;
constexpr std::size_t john_samples = 10000;
constexpr double hat_ratio_spread = 4.0;
constexpr double chain_slack = 0.0;
constexpr double superadditivity_tolerance = 1e-9;
constexpr double lp_relative_tolerance = 1e-10;
constexpr double oscillation_tolerance = 1e-12;
constexpr std::size_t property_trials = 1000;

struct Context {
    const AcceptanceConfig& config;
    std::vector<SNumberBound> bounds;
};

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what)
    {
        if (condition) return;
        if (passed) detail.str("");
        else detail << "; ";
        passed = false;
        detail << what;
    }
};

std::string num(double x)
{
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

struct Criterion {
    const char* key;
    double budget;
    void (*run)(Context&, Outcome&);
};

void isomorphism_1d(Context& ctx, Outcome& out)
{
    // N divisible by 2n for every n <= 10.
    const std::size_t N = 2 * 2520;
    for (std::size_t n = 1; n <= 10; ++n) {
        const SNumberBound b = isomorphism_lower_1d(n, N, ctx.config.mode);
        const Rational expected(1, static_cast<long>(2 * n));
        if (ctx.config.mode == ArithmeticMode::exact)
            out.require(b.lower_exact && *b.lower_exact == expected,
                        "i_" + std::to_string(n) + " lower != 1/" + std::to_string(2 * n));
        else
            out.require(std::abs(b.lower - expected.get_d()) <= ctx.config.float_tolerance,
                        "i_" + std::to_string(n) + " lower = " + num(b.lower));
        out.require(b.witness.value("identity_verified", false), "identity check failed at n = " + std::to_string(n));
        ctx.bounds.push_back(b);
    }
    if (out.passed) out.detail << "i_n lower = 1/(2n) for n = 1..10, N = " << N << ", mode " << to_string(ctx.config.mode);
}

void bernstein_1d(Context& ctx, Outcome& out)
{
    std::mt19937_64 rng(ctx.config.seed);
    ZigzagOptions opt;
    opt.epsilon = zigzag_epsilon;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const StepSubspace E = random_mean_zero_subspace(n, 64, rng);
            opt.seed = rng();
            const SNumberBound b = bernstein_upper_1d(E, opt);
            const double scaled = b.upper * 2.0 * static_cast<double>(n);
            worst = std::max(worst, scaled);
            out.require(b.status == BoundStatus::certified,
                        "n = " + std::to_string(n) + " trial " + std::to_string(trial) + " not certified (" + to_string(b.status) + ")");
            out.require(scaled <= bernstein_factor * (1.0 + 1e-12),
                        "n = " + std::to_string(n) + " trial " + std::to_string(trial) + ": 2n b_n upper = " + num(scaled));
            out.require(b.upper >= 1.0 / (2.0 * static_cast<double>(n)) * (1.0 - 1e-12), "upper below the isomorphism bound");
            ctx.bounds.push_back(b);
        }
    }
    if (out.passed) out.detail << "100 subspaces certified, max 2n * upper = " << num(worst);
}

void gelfand_1d(Context& ctx, Outcome& out)
{
    std::mt19937_64 rng(ctx.config.seed + 1);
    double worst = 1.0;
    for (std::size_t n = 1; n <= 10; ++n) {
        const std::size_t m_max = std::min<std::size_t>(4, n - 1);
        std::vector<std::vector<StepFunction<double>>> sets;
        for (int s = 0; s < 20; ++s) {
            const std::size_t m = m_max == 0 ? 0 : 1 + rng() % m_max;
            sets.push_back(random_step_functionals(m, 64, rng));
        }
        if (m_max > 0) {
            sets.push_back(node_evaluation_functionals(m_max));
            sets.push_back(fourier_functionals(m_max, 64));
        }
        const SNumberBound c = gelfand_lower(n, sets, gelfand_epsilon);
        const SNumberBound a = approximation_upper(n);
        worst = std::min(worst, c.lower);
        out.require(c.lower >= gelfand_threshold, "c_" + std::to_string(n) + " lower = " + num(c.lower));
        out.require(a.upper_exact && *a.upper_exact == Rational(1, 2), "a_" + std::to_string(n) + " upper != 1/2");
        ctx.bounds.push_back(c);
        ctx.bounds.push_back(a);
    }
    if (out.passed) out.detail << "min c_n lower = " << num(worst) << ", a_n upper = 1/2, n = 1..10";
}

void kolmogorov_1d(Context& ctx, Outcome& out)
{
    double worst = 1.0;
    for (std::size_t n = 2; n <= 5; ++n) {
        const SNumberBound up = kolmogorov_upper_1d(n);
        out.require(up.upper_exact && *up.upper_exact == Rational(1, 4), "d_" + std::to_string(n) + " upper != 1/4");
        const SNumberBound lo = kolmogorov_lower_witness(n, kolmogorov_k_max, shipped_kolmogorov_adversaries(n, ctx.config.seed));
        worst = std::min(worst, lo.lower);
        out.require(lo.lower >= kolmogorov_threshold, "d_" + std::to_string(n) + " lower = " + num(lo.lower));
        ctx.bounds.push_back(up);
        ctx.bounds.push_back(lo);
    }
    if (out.passed) out.detail << "d_n upper = 1/4 exactly, min lower = " << num(worst) << ", n = 2..5";
}

void discrete_norm(Context&, Outcome& out)
{
    for (std::size_t N : {2, 16, 256}) {
        const DiscreteNormResult r = operator_norm_discrete(N);
        out.require(r.value == Rational(1, 2), "N = " + std::to_string(N) + ": norm = " + to_string(r.value));
    }
    if (out.passed) out.detail << "||V_N|| = 1/2 for N = 2, 16, 256";
}

void hilbert_structure(Context& ctx, Outcome& out)
{
    std::vector<std::pair<int, int>> cases;
    for (int k = 1; k <= 6; ++k) cases.emplace_back(2, k);
    for (int k = 1; k <= 3; ++k) cases.emplace_back(3, k);
    for (const auto& [d, k] : cases) {
        CubeOrdering o = hilbert_order(d, k);
        if (ctx.config.corrupt_hilbert && d == 2 && k == 3) o = o.with_swapped(2, o.size() - 1);
        const std::string tag = "(d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")";
        const AdjacencyCheck adj = check_face_adjacency(o);
        out.require(adj.ok, "check_face_adjacency failed " + tag + " at index " +
                                (adj.first_violation ? std::to_string(*adj.first_violation) : std::string("?")));
        const NestingCheck nest = check_prefix_nesting(o);
        out.require(nest.ok, "check_prefix_nesting failed " + tag + " at cube " +
                                 (nest.first_violation ? to_string(*nest.first_violation) : std::string("?")));
    }
    if (out.passed) out.detail << "adjacency and nesting hold for d = 2, k = 1..6 and d = 3, k = 1..3";
}

void john_uniformity(Context& ctx, Outcome& out)
{
    const int d = 2;
    std::set<double> constants;
    double worst = 0.0;
    std::size_t domains = 0;
    auto check = [&](const std::shared_ptr<const CubeOrdering>& o, CurveIndex i, CurveIndex j) {
        const CubeUnion omega(o, i, j);
        const JohnCertificate cert = john_bound_constructive(omega);
        constants.insert(cert.constant);
        const JohnVerification v = verify_john_certificate(omega, cert, john_samples, ctx.config.seed + i * 7919u + j);
        worst = std::max(worst, v.worst_ratio / cert.constant);
        ++domains;
        out.require(v.passed, "verification failed on [" + std::to_string(i) + ", " + std::to_string(j) + "] at k = " +
                                  std::to_string(o->order()) + ": ratio " + num(v.worst_ratio));
    };
    const auto o3 = std::make_shared<const CubeOrdering>(hilbert_order(d, 3));
    for (CurveIndex i = 1; i <= o3->size(); ++i)
        for (CurveIndex j = i; j <= o3->size(); ++j) check(o3, i, j);
    std::mt19937_64 rng(ctx.config.seed + 2);
    for (int k : {4, 5}) {
        const auto o = std::make_shared<const CubeOrdering>(hilbert_order(d, k));
        std::uniform_int_distribution<CurveIndex> pick(1, o->size());
        for (int s = 0; s < 500; ++s) {
            CurveIndex i = pick(rng), j = pick(rng);
            if (i > j) std::swap(i, j);
            check(o, i, j);
        }
    }
    out.require(constants.size() == 1, "constructive constants take " + std::to_string(constants.size()) + " values");
    out.require(worst <= 1.0 + john_slack, "worst ratio / constant = " + num(worst));
    if (out.passed)
        out.detail << domains << " domains, constant " << num(*constants.begin()) << ", worst ratio / constant " << num(worst);
}

void cube_scaling(Context& ctx, Outcome& out)
{
    const int d = 2;
    const LorentzParams X = LorentzParams::make(d, 1);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int m : {1, 2, 4, 8}) {
        const SNumberBound b = isomorphism_lower_ddim(d, m, X, 0, ctx.config.mode);
        const std::string tag = "n = " + std::to_string(m * m);
        if (ctx.config.mode == ArithmeticMode::exact)
            out.require(b.lower_exact && *b.lower_exact * m == Rational(1, 2 * d), tag + ": i_n n^{1/2} != 1/4");
        else
            out.require(std::abs(b.lower * m - 0.25) <= ctx.config.float_tolerance, tag + ": i_n n^{1/2} = " + num(b.lower * m));
        ctx.bounds.push_back(b);
        const double r = hat_subspace_bernstein_ratio(hat_construction(d, m), X) * m;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    out.require(hi < hat_ratio_spread * lo, "hat ratio spread " + num(hi / lo));
    if (out.passed) out.detail << "i_n n^{1/2} = 1/4, hat ratio * n^{1/2} in [" << num(lo) << ", " << num(hi) << "]";
}

void cube_chain(Context& ctx, Outcome& out)
{
    std::mt19937_64 rng(ctx.config.seed + 3);
    ZigzagOptions opt;
    opt.epsilon = zigzag_epsilon;
    double min_slack = std::numeric_limits<double>::infinity();
    int certified = 0;
    for (int t = 0; t < 10; ++t) {
        const GridSubspace E = random_grid_subspace(3, 2, 32, rng);
        opt.seed = rng();
        const SNumberBound b = bernstein_upper_ddim(E, 4, opt);
        const auto links = chain_links(b);
        out.require(!links.empty(), "trial " + std::to_string(t) + ": no chain (" + to_string(b.status) + ")");
        for (const auto& l : links) {
            min_slack = std::min(min_slack, l.slack);
            out.require(l.holds && l.slack >= chain_slack,
                        "trial " + std::to_string(t) + ": " + l.name + " slack " + num(l.slack));
        }
        for (const auto& dom : b.witness.value("domains", nlohmann::json::array()))
            out.require(dom.at("holds").get<bool>(), "trial " + std::to_string(t) + ": oscillation bound fails on a domain");
        certified += b.status == BoundStatus::certified;
        ctx.bounds.push_back(b);
    }
    if (out.passed) out.detail << "10 subspaces, " << certified << " zigzag-certified, min slack " << num(min_slack);
}

StepFunction<double> random_step(std::mt19937_64& rng, std::size_t pieces)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> bp{0.0, 1.0};
    while (bp.size() < pieces + 1) bp.push_back(unit(rng));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> v(bp.size() - 1);
    for (auto& x : v) x = 2.0 * unit(rng) - 1.0;
    return StepFunction<double>(std::move(bp), std::move(v));
}

void property_suites(Context& ctx, Outcome& out)
{
    std::mt19937_64 rng(ctx.config.seed + 4);
    const std::vector<std::pair<double, double>> pq{{2, 1}, {3, 1}, {2, 2}, {3, 2}};
    double worst_sum = -1.0, worst_lp = 0.0, worst_osc = 0.0;
    for (std::size_t t = 0; t < property_trials; ++t) {
        const auto [p, q] = pq[t % pq.size()];
        const LorentzParams X = LorentzParams::make(p, q);
        const StepFunction<double> f = random_step(rng, 2 + rng() % 12);
        const std::size_t parts = 2 + rng() % 4;
        std::vector<std::vector<double>> pieces(parts, std::vector<double>(f.pieces(), 0.0));
        for (std::size_t i = 0; i < f.pieces(); ++i) pieces[rng() % parts][i] = f.values()[i];
        double sum = 0.0;
        for (auto& v : pieces) sum += std::pow(lorentz_norm(StepFunction<double>(f.breakpoints(), v), X), p);
        const double whole = std::pow(lorentz_norm(f, X), p);
        worst_sum = std::max(worst_sum, sum - whole);
        out.require(sum <= whole + superadditivity_tolerance, "superadditivity fails at trial " + std::to_string(t));

        double lp = 0.0;
        for (std::size_t i = 0; i < f.pieces(); ++i)
            lp += std::pow(std::abs(f.values()[i]), p) * (f.breakpoints()[i + 1] - f.breakpoints()[i]);
        lp = std::pow(lp, 1.0 / p);
        const double rel = std::abs(lorentz_norm(f, LorentzParams::make(p, p)) - lp) / lp;
        worst_lp = std::max(worst_lp, rel);
        out.require(rel <= lp_relative_tolerance, "L^{p,p} differs from L^p at trial " + std::to_string(t));

        StepFunction<double> g = f;
        g -= StepFunction<double>::indicator(0.0, 1.0, g.integral());
        const double l1 = g.l1_norm();
        if (l1 > 0.0) {
            g *= 1.0 / l1;
            const VolterraCurve<double> v(g);
            const double osc = v.max_value() - v.min_value();
            worst_osc = std::max(worst_osc, osc);
            out.require(osc <= 0.5 + oscillation_tolerance, "oscillation " + num(osc) + " at trial " + std::to_string(t));
        }
    }

    if (ctx.bounds.empty()) {
        for (std::size_t n = 1; n <= 5; ++n) {
            ctx.bounds.push_back(isomorphism_lower_1d(n, 2 * 60, ctx.config.mode));
            ctx.bounds.push_back(approximation_upper(n));
            ctx.bounds.push_back(gelfand_lower(n, {}, gelfand_epsilon));
            if (n >= 2) ctx.bounds.push_back(kolmogorov_upper_1d(n, 16));
            ctx.bounds.push_back(bernstein_upper_1d(dipole_subspace(n, 2 * 60)));
        }
    }
    const AxiomReport axioms = snumber_axiom_suite(ctx.bounds, {{volterra_label, 0.5}});
    for (const auto& v : axioms.violations) out.require(false, "axiom " + v.rule + ": " + v.detail);
    if (out.passed)
        out.detail << property_trials << " trials each; superadditivity excess " << num(worst_sum) << ", L^{p,p} rel err "
                   << num(worst_lp) << ", max oscillation " << num(worst_osc) << "; " << axioms.checks << " axiom checks on "
                   << ctx.bounds.size() << " bounds";
}

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list{
        {"isomorphism-1d", 1.0, isomorphism_1d},
        {"bernstein-1d-zigzag", 120.0, bernstein_1d},
        {"gelfand-approximation-1d", 30.0, gelfand_1d},
        {"kolmogorov-1d-quarter", 60.0, kolmogorov_1d},
        {"volterra-discrete-norm", 1.0, discrete_norm},
        {"hilbert-structure", 30.0, hilbert_structure},
        {"john-uniformity", 180.0, john_uniformity},
        {"cube-scaling", 120.0, cube_scaling},
        {"cube-bernstein-chain", 120.0, cube_chain},
        {"property-suites", 60.0, property_suites},
    };
    return list;
}

}  // namespace

std::size_t acceptance_criterion_count() { return criteria().size(); }

std::string acceptance_key(int id)
{
    if (id < 1 || static_cast<std::size_t>(id) > criteria().size()) throw DomainError("no criterion " + std::to_string(id));
    return criteria()[static_cast<std::size_t>(id - 1)].key;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
    Context ctx{config, {}};
    std::vector<CriterionResult> results;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), id) == config.only.end()) continue;
        const Criterion& c = criteria()[i];
        CriterionResult r;
        r.id = id;
        r.key = c.key;
        r.budget_seconds = c.budget;
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(ctx, out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.passed = out.passed;
        r.detail = out.detail.str();
        if (r.seconds > r.budget_seconds) {
            r.passed = false;
            r.detail += "; runtime " + num(r.seconds) + " s exceeds budget " + num(r.budget_seconds) + " s";
        }
        if (on_result) on_result(r);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_result(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << std::setw(3) << r.id << " " << r.key << " (" << std::fixed << std::setprecision(2)
       << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds << " s): " << r.detail;
    return os.str();
}

}  // namespace snum
