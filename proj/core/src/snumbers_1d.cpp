#include "snum/snumbers.hpp"

#include "snum/error.hpp"
#include "snum/linprog.hpp"
#include "snum/serialization.hpp"
#include "snum/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace snum {

using nlohmann::json;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Piecewise linear interpolation of node values y_0..y_N on the uniform N-grid.
double interpolate_uniform(const Eigen::VectorXd& y, double x)
{
    const auto N = static_cast<double>(y.size() - 1);
    const double s = std::clamp(x, 0.0, 1.0) * N;
    const auto i = std::min(static_cast<Eigen::Index>(std::floor(s)), y.size() - 2);
    const double w = s - static_cast<double>(i);
    return y(i) + w * (y(i + 1) - y(i));
}

template <class T>
StepFunction<T> dipole(std::size_t k, std::size_t n)
{
    // 2n (chi_{I_{2k-1}} - chi_{I_{2k}}), I_j = [(j-1)/2n, j/2n].
    // Each breakpoint is j/2n so neighbouring blocks share them bit-for-bit.
    const T two_n = T(static_cast<long>(2 * n));
    auto at = [&](std::size_t j) -> T { return T(static_cast<long>(j)) / two_n; };
    StepFunction<T> f = StepFunction<T>::indicator(at(2 * k - 2), at(2 * k - 1), two_n);
    f -= StepFunction<T>::indicator(at(2 * k - 1), at(2 * k), two_n);
    return f;
}

template <class T>
inline constexpr double identity_tolerance = 0.0;
template <>
inline constexpr double identity_tolerance<double> = 1e-12;

template <class T>
struct Factorization1D {
    bool identity = true;
    T norm_b = T(0);
    std::size_t vertices = 0;
    std::vector<StepFunction<T>> blocks;
    std::vector<T> points;
};

template <class T>
Factorization1D<T> factorize_1d(std::size_t n)
{
    Factorization1D<T> out;
    for (std::size_t k = 1; k <= n; ++k) {
        out.blocks.push_back(dipole<T>(k, n));
        out.points.push_back(T(static_cast<long>(2 * k - 1)) / T(static_cast<long>(2 * n)));
    }
    for (std::size_t k = 0; k < n; ++k) {
        const VolterraCurve<T> v(out.blocks[k]);
        for (std::size_t j = 0; j < n; ++j) {
            const T expected = j == k ? T(1) : T(0);
            // Bit-exact on rationals; in floating point up to rounding of the points.
            if (abs_value(v(out.points[j]) - expected) > T(identity_tolerance<T>)) out.identity = false;
        }
    }
    // ||B|| = max of the convex map y -> ||By||_1 over the vertices of the cube.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<T> values;
        std::vector<T> bp{T(0)};
        for (std::size_t k = 0; k < n; ++k) {
            const T sign = ((mask >> k) & 1U) ? T(-1) : T(1);
            const auto& f = out.blocks[k];
            // Blocks have disjoint supports on consecutive intervals.
            for (std::size_t p = 0; p < f.pieces(); ++p) {
                if (f.values()[p] == T(0)) continue;
                if (bp.back() != f.breakpoints()[p]) {
                    bp.push_back(f.breakpoints()[p]);
                    values.push_back(T(0));
                }
                bp.push_back(f.breakpoints()[p + 1]);
                values.push_back(sign * f.values()[p]);
            }
        }
        if (bp.back() != T(1)) {
            bp.push_back(T(1));
            values.push_back(T(0));
        }
        const T l1 = StepFunction<T>(std::move(bp), std::move(values)).l1_norm();
        if (l1 > out.norm_b) out.norm_b = l1;
        ++out.vertices;
    }
    return out;
}

std::string fraction(std::size_t num, std::size_t den)
{
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return to_string(q);
}

}  // namespace

char kind_code(SNumberKind kind)
{
    switch (kind) {
    case SNumberKind::approximation: return 'a';
    case SNumberKind::gelfand: return 'c';
    case SNumberKind::kolmogorov: return 'd';
    case SNumberKind::bernstein: return 'b';
    case SNumberKind::isomorphism: return 'i';
    }
    return '?';
}

SNumberKind parse_kind(char code)
{
    switch (code) {
    case 'a': return SNumberKind::approximation;
    case 'c': return SNumberKind::gelfand;
    case 'd': return SNumberKind::kolmogorov;
    case 'b': return SNumberKind::bernstein;
    case 'i': return SNumberKind::isomorphism;
    default: throw DomainError(std::string("unknown s-number kind: ") + code);
    }
}

std::string kind_name(SNumberKind kind)
{
    switch (kind) {
    case SNumberKind::approximation: return "approximation";
    case SNumberKind::gelfand: return "gelfand";
    case SNumberKind::kolmogorov: return "kolmogorov";
    case SNumberKind::bernstein: return "bernstein";
    case SNumberKind::isomorphism: return "isomorphism";
    }
    return "unknown";
}

std::string to_string(BoundStatus status)
{
    switch (status) {
    case BoundStatus::certified: return "certified";
    case BoundStatus::uncertified: return "uncertified";
    case BoundStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

BoundStatus parse_status(std::string_view text)
{
    if (text == "certified") return BoundStatus::certified;
    if (text == "uncertified") return BoundStatus::uncertified;
    if (text == "inconclusive") return BoundStatus::inconclusive;
    throw DomainError("unknown bound status: " + std::string(text));
}

std::string cube_embedding_label(int d, const LorentzParams& X)
{
    std::ostringstream os;
    os << "V_0^1 L^{" << X.p << "," << X.q << "}((0,1)^" << d << ") -> C";
    return os.str();
}

StepSubspace::StepSubspace(Eigen::MatrixXd cell_values, bool require_mean_zero) : values_(std::move(cell_values))
{
    if (values_.rows() < 1 || values_.cols() < 1) throw DomainError("subspace needs at least one cell and one basis element");
    if (values_.cols() > values_.rows()) throw DomainError("degenerate basis: more elements than cells");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(values_);
    if (qr.rank() < values_.cols()) throw DomainError("degenerate basis: elements are linearly dependent");
    if (require_mean_zero) {
        for (Eigen::Index j = 0; j < values_.cols(); ++j)
            if (std::abs(values_.col(j).mean()) > 1e-12) throw DomainError("basis element is not mean-zero");
    }
}

StepFunction<double> StepSubspace::element(const Eigen::VectorXd& coefficients) const
{
    const Eigen::VectorXd v = values_ * coefficients;
    return StepFunction<double>::uniform(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXd StepSubspace::volterra_interior_nodes() const
{
    const auto N = values_.rows();
    Eigen::MatrixXd out(N - 1, values_.cols());
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i + 1 < N; ++i) {
            acc += values_(i, j) / static_cast<double>(N);
            out(i, j) = acc;
        }
    }
    return out;
}

double StepSubspace::l1_norm(const Eigen::VectorXd& coefficients) const
{
    return (values_ * coefficients).cwiseAbs().sum() / static_cast<double>(values_.rows());
}

StepSubspace random_mean_zero_subspace(std::size_t n, std::size_t N, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (;;) {
        Eigen::MatrixXd v(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < v.cols(); ++j)
            for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = unit(rng);
        v.rowwise() -= v.colwise().mean();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
        if (static_cast<std::size_t>(qr.rank()) == n) return StepSubspace(std::move(v));
    }
}

StepSubspace dipole_subspace(std::size_t n, std::size_t N)
{
    if (n < 1 || N % (2 * n) != 0) throw DomainError("dipole subspace needs 2n | N");
    const std::size_t w = N / (2 * n);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < w; ++c) {
            v(static_cast<Eigen::Index>(2 * k * w + c), static_cast<Eigen::Index>(k)) = 2.0 * static_cast<double>(n);
            v(static_cast<Eigen::Index>((2 * k + 1) * w + c), static_cast<Eigen::Index>(k)) = -2.0 * static_cast<double>(n);
        }
    return StepSubspace(std::move(v));
}

SNumberBound isomorphism_lower_1d(std::size_t n, std::size_t N, ArithmeticMode mode)
{
    if (n < 1) throw DomainError("isomorphism bound needs n >= 1");
    if (N < 1 || N % (2 * n) != 0)
        throw DomainError("grid size N = " + std::to_string(N) + " is not divisible by 2n = " + std::to_string(2 * n));

    SNumberBound b;
    b.kind = SNumberKind::isomorphism;
    b.n = n;
    b.mode = mode;
    b.anchor = "isomorphism lower bound: point evaluation A and dipole synthesis B";
    json w;
    w["grid_cells"] = N;
    w["norm_a"] = "1";
    if (mode == ArithmeticMode::exact) {
        const auto fz = factorize_1d<Rational>(n);
        if (!fz.identity) throw CertificateInvalid("A V B is not the identity");
        const Rational lower = Rational(1) / fz.norm_b;
        b.lower_exact = lower;
        b.lower = lower.get_d();
        w["norm_b"] = to_string(fz.norm_b);
        w["vertices_checked"] = fz.vertices;
        json pts = json::array();
        for (const auto& p : fz.points) pts.push_back(to_string(p));
        w["points"] = pts;
        json blocks = json::array();
        for (const auto& f : fz.blocks) blocks.push_back(to_json(f));
        w["synthesis_blocks"] = blocks;
    } else {
        const auto fz = factorize_1d<double>(n);
        if (!fz.identity) throw CertificateInvalid("A V B is not the identity");
        b.lower = 1.0 / fz.norm_b;
        w["norm_b"] = fz.norm_b;
        w["vertices_checked"] = fz.vertices;
        w["points"] = fz.points;
        json blocks = json::array();
        for (const auto& f : fz.blocks) blocks.push_back(to_json(f));
        w["synthesis_blocks"] = blocks;
    }
    w["identity_verified"] = true;
    b.upper = 0.5;
    b.upper_exact = Rational(1, 2);
    b.witness = std::move(w);
    return b;
}

SNumberBound bernstein_upper_1d(const StepSubspace& E, const ZigzagOptions& options)
{
    const std::size_t n = E.dim();
    const std::size_t N = E.cells();
    if (N < n + 1) throw DomainError("Bernstein certificate needs N > n cells");
    SNumberBound b;
    b.kind = SNumberKind::bernstein;
    b.n = n;
    b.mode = ArithmeticMode::floating;
    b.anchor = "Bernstein upper bound: zigzag element and telescoping l1 estimate";

    const Eigen::MatrixXd G = E.volterra_interior_nodes();
    const ZigzagWitness z = zigzag_find(G, options);
    json w;
    w["scope"] = "inf of ||Vf||/||f||_1 over the given subspace";
    w["epsilon"] = options.epsilon;
    w["exhaustive"] = z.exhaustive;
    w["index_sets_evaluated"] = z.index_sets_evaluated;
    if (z.indices.empty()) {
        b.status = BoundStatus::inconclusive;
        b.witness = std::move(w);
        return b;
    }

    const Eigen::VectorXd& g = z.values;
    double telescoping = std::abs(g(static_cast<Eigen::Index>(z.indices.front())));
    for (std::size_t j = 0; j + 1 < n; ++j)
        telescoping += std::abs(g(static_cast<Eigen::Index>(z.indices[j + 1])) - g(static_cast<Eigen::Index>(z.indices[j])));
    telescoping += std::abs(g(static_cast<Eigen::Index>(z.indices.back())));
    const double h_l1 = E.l1_norm(z.coefficients);
    if (h_l1 < telescoping * (1.0 - 1e-12))
        throw CertificateInvalid("pulled-back element violates the telescoping estimate");

    const double two_n = 2.0 * static_cast<double>(n);
    b.upper = z.sup_norm_value / std::min(two_n, h_l1);
    b.status = z.certified ? BoundStatus::certified : BoundStatus::inconclusive;

    json pts = json::array();
    for (auto i : z.indices) pts.push_back(fraction(i + 1, N));
    w["points"] = pts;
    w["coefficients"] = std::vector<double>(z.coefficients.data(), z.coefficients.data() + z.coefficients.size());
    w["sup_norm_g"] = z.sup_norm_value;
    w["interpolation_residual"] = z.interpolation_residual;
    w["l1_norm_h"] = h_l1;
    w["telescoping_sum"] = telescoping;
    w["direct_ratio"] = z.sup_norm_value / h_l1;
    w["h"] = to_json(E.element(z.coefficients));
    b.witness = std::move(w);
    return b;
}

SNumberBound bernstein_lower(const StepSubspace& E, std::uint64_t seed)
{
    const std::size_t n = E.dim();
    const Eigen::MatrixXd G = E.volterra_interior_nodes();
    const Eigen::MatrixXd W = E.cell_values() / static_cast<double>(E.cells());
    if (G.rows() < static_cast<Eigen::Index>(n)) throw DomainError("degenerate basis: too few nodes");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G);
    if (static_cast<std::size_t>(qr.rank()) < n) throw DomainError("degenerate basis: V-images are dependent");

    SNumberBound b;
    b.kind = SNumberKind::bernstein;
    b.n = n;
    b.mode = ArithmeticMode::floating;
    json w;
    w["scope"] = "Bernstein ratio of the given subspace";

    auto ratio = [&](const Eigen::VectorXd& c) { return (G * c).cwiseAbs().maxCoeff() / (W * c).cwiseAbs().sum(); };

    if (n <= 3) {
        // 1/ratio = max ||Wc||_1 over the polytope ||Gc||_inf <= 1, attained at a vertex.
        b.anchor = "Bernstein lower bound: vertex enumeration of the unit ball of V(E)";
        const auto rows = static_cast<std::size_t>(G.rows());
        std::vector<std::size_t> t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = j;
        Eigen::MatrixXd M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        Eigen::VectorXd sigma(static_cast<Eigen::Index>(n));
        double best = 0.0;
        Eigen::VectorXd best_c;
        std::size_t vertices = 0;
        for (;;) {
            for (std::size_t r = 0; r < n; ++r) M.row(static_cast<Eigen::Index>(r)) = G.row(static_cast<Eigen::Index>(t[r]));
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (lu.isInvertible()) {
                // c and -c give the same value; fix the first sign.
                for (std::uint32_t mask = 0; mask < (1U << (n - 1)); ++mask) {
                    sigma(0) = 1.0;
                    for (std::size_t j = 1; j < n; ++j) sigma(static_cast<Eigen::Index>(j)) = ((mask >> (j - 1)) & 1U) ? -1.0 : 1.0;
                    const Eigen::VectorXd c = lu.solve(sigma);
                    if ((G * c).cwiseAbs().maxCoeff() > 1.0 + 1e-9) continue;
                    ++vertices;
                    const double v = (W * c).cwiseAbs().sum();
                    if (v > best) {
                        best = v;
                        best_c = c;
                    }
                }
            }
            std::size_t i = n;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (t[i] < rows - n + i) {
                    ++t[i];
                    for (std::size_t j = i + 1; j < n; ++j) t[j] = t[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (best <= 0.0) throw ConstructionError("vertex enumeration found no vertex");
        b.lower = 1.0 / best;
        b.status = BoundStatus::certified;
        w["vertices_checked"] = vertices;
        w["ratio_at_minimiser"] = ratio(best_c);
        w["minimiser"] = std::vector<double>(best_c.data(), best_c.data() + best_c.size());
        b.witness = std::move(w);
        return b;
    }

    // Multi-start subgradient descent on the homogeneous ratio.
    b.anchor = "Bernstein ratio search: multi-start subgradient descent (heuristic)";
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    double best = inf;
    Eigen::VectorXd best_c;
    for (int start = 0; start < 16; ++start) {
        Eigen::VectorXd c(static_cast<Eigen::Index>(n));
        for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = normal(rng);
        double step = 0.1;
        for (int it = 0; it < 400; ++it) {
            c /= (W * c).cwiseAbs().sum();
            const double r = ratio(c);
            if (r < best) {
                best = r;
                best_c = c;
            }
            Eigen::Index arg = 0;
            const Eigen::VectorXd gc = G * c;
            gc.cwiseAbs().maxCoeff(&arg);
            const Eigen::VectorXd num_grad = (gc(arg) >= 0.0 ? 1.0 : -1.0) * G.row(arg).transpose();
            const Eigen::VectorXd sgn = (W * c).unaryExpr([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
            const Eigen::VectorXd den_grad = W.transpose() * sgn;
            const Eigen::VectorXd grad = num_grad - r * den_grad;
            const double gn = grad.norm();
            if (gn == 0.0) break;
            c -= step * grad / gn * c.norm();
            step *= 0.99;
        }
    }
    b.lower = best;
    b.status = BoundStatus::uncertified;
    w["search_value"] = best;
    w["minimiser"] = std::vector<double>(best_c.data(), best_c.data() + best_c.size());
    b.witness = std::move(w);
    return b;
}

GelfandWitness gelfand_lower_adversary(const std::vector<StepFunction<double>>& functionals, double eps)
{
    if (!(eps > 0.0)) throw DomainError("quantization step must be positive");
    std::vector<const StepFunction<double>*> ptrs;
    for (const auto& g : functionals) ptrs.push_back(&g);
    std::vector<double> ref = functionals.empty() ? std::vector<double>{0.0, 1.0} : common_refinement(ptrs);
    const std::size_t pieces = ref.size() - 1;
    std::vector<std::vector<double>> vals;
    for (const auto& g : functionals) vals.push_back(values_on(g, ref));

    // Class of a piece: the quantization cell of every signed g_k value.
    std::map<std::vector<long long>, double> measure;
    std::vector<std::vector<long long>> key(pieces);
    for (std::size_t p = 0; p < pieces; ++p) {
        for (const auto& v : vals) key[p].push_back(static_cast<long long>(std::floor(v[p] / eps)));
        measure[key[p]] += ref[p + 1] - ref[p];
    }
    auto best = measure.begin();
    for (auto it = measure.begin(); it != measure.end(); ++it)
        if (it->second > best->second) best = it;
    const auto& omega = best->first;
    const double total = best->second;
    if (!(total > 0.0)) throw ConstructionError("no quantization class of positive measure");

    // Measure median of the class.
    double acc = 0.0;
    double x = 0.0;
    for (std::size_t p = 0; p < pieces; ++p) {
        if (key[p] != omega) continue;
        const double len = ref[p + 1] - ref[p];
        if (acc + len >= total / 2.0) {
            x = ref[p] + (total / 2.0 - acc);
            break;
        }
        acc += len;
    }
    std::vector<double> bp{0.0};
    std::vector<double> fv;
    const double m1 = total / 2.0;
    for (std::size_t p = 0; p < pieces; ++p) {
        const bool in = key[p] == omega;
        const double a = ref[p];
        const double c = ref[p + 1];
        auto push = [&](double right, double value) {
            if (right <= bp.back()) return;
            bp.push_back(right);
            fv.push_back(value);
        };
        if (!in) {
            push(c, 0.0);
        } else if (c <= x) {
            push(c, 0.5 / m1);
        } else if (a >= x) {
            push(c, -0.5 / (total - m1));
        } else {
            push(x, 0.5 / m1);
            push(c, -0.5 / (total - m1));
        }
    }
    bp.back() = 1.0;

    GelfandWitness w{StepFunction<double>(std::move(bp), std::move(fv)).canonical(), x, total, 0.0, 0.0, 0.0, 0.0};
    const VolterraCurve<double> vf(w.f);
    w.vf_at_split = vf(x);
    w.l1_norm = w.f.l1_norm();
    for (const auto& g : functionals) w.max_pairing = std::max(w.max_pairing, std::abs(w.f.product(g).integral()));
    w.rho_bound = (vf.sup_norm() - w.max_pairing) / w.l1_norm;
    return w;
}

std::vector<StepFunction<double>> random_step_functionals(std::size_t m, std::size_t N, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<StepFunction<double>> out;
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<double> v(N);
        for (auto& x : v) x = unit(rng);
        out.push_back(StepFunction<double>::uniform(v));
    }
    return out;
}

std::vector<StepFunction<double>> node_evaluation_functionals(std::size_t m)
{
    std::vector<StepFunction<double>> out;
    for (std::size_t k = 1; k <= m; ++k)
        out.push_back(StepFunction<double>::indicator(0.0, static_cast<double>(k) / static_cast<double>(m + 1)));
    return out;
}

std::vector<StepFunction<double>> fourier_functionals(std::size_t m, std::size_t N)
{
    std::vector<StepFunction<double>> out;
    for (std::size_t k = 0; k < m; ++k) {
        const double freq = static_cast<double>(k / 2 + 1);
        std::vector<double> v(N);
        for (std::size_t i = 0; i < N; ++i) {
            const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
            v[i] = k % 2 == 0 ? std::cos(2.0 * std::numbers::pi * freq * x) : std::sin(2.0 * std::numbers::pi * freq * x);
        }
        out.push_back(StepFunction<double>::uniform(v));
    }
    return out;
}

SNumberBound gelfand_lower(std::size_t n, const std::vector<std::vector<StepFunction<double>>>& adversaries, double eps)
{
    if (n < 1) throw DomainError("Gelfand bound needs n >= 1");
    SNumberBound b;
    b.kind = SNumberKind::gelfand;
    b.n = n;
    b.mode = ArithmeticMode::floating;
    b.anchor = "Gelfand lower bound: quantized common level set and split dipole";
    b.upper = 0.5;
    b.upper_exact = Rational(1, 2);
    json w;
    w["epsilon"] = eps;
    w["scope"] = "against the supplied functional sets";
    json sets = json::array();
    double lower = inf;
    std::optional<GelfandWitness> worst;
    for (const auto& fs : adversaries) {
        if (fs.size() >= n) throw DomainError("a functional set must have fewer than n elements");
        GelfandWitness g = gelfand_lower_adversary(fs, eps);
        sets.push_back(json{{"m", fs.size()},
                            {"rho_bound", g.rho_bound},
                            {"max_pairing", g.max_pairing},
                            {"split_point", g.split_point},
                            {"class_measure", g.class_measure}});
        if (g.rho_bound < lower) {
            lower = g.rho_bound;
            worst = std::move(g);
        }
    }
    if (!worst) {
        // No functionals: the dipole about 1/2.
        worst = gelfand_lower_adversary({}, eps);
        lower = worst->rho_bound;
    }
    b.lower = lower;
    w["adversaries"] = sets;
    w["worst_f"] = to_json(worst->f);
    w["worst_split_point"] = worst->split_point;
    b.witness = std::move(w);
    return b;
}

double kolmogorov_midrange_distance(const StepFunction<double>& f)
{
    if (std::abs(f.integral()) > 1e-12) throw PreconditionError("Kolmogorov midrange needs a mean-zero f");
    const VolterraCurve<double> v(f);
    return (v.max_value() - v.min_value()) / 2.0;
}

Rational kolmogorov_midrange_distance(const StepFunction<Rational>& f)
{
    if (f.integral() != 0) throw PreconditionError("Kolmogorov midrange needs a mean-zero f");
    const VolterraCurve<Rational> v(f);
    return (v.max_value() - v.min_value()) / 2;
}

SNumberBound kolmogorov_upper_1d(std::size_t n, std::size_t search_cells)
{
    if (n < 2) throw DomainError("Kolmogorov upper bound is for n >= 2; d_1 = ||V||");
    if (search_cells < 2) throw DomainError("dipole search needs at least two cells");
    SNumberBound b;
    b.kind = SNumberKind::kolmogorov;
    b.n = n;
    b.mode = ArithmeticMode::exact;
    b.anchor = "Kolmogorov upper bound: constants, oscillation at most 1/2, midrange centre";
    b.upper_exact = Rational(1, 4);
    b.upper = 0.25;

    // Maximising search over dipoles (N/2)(e_a - e_b).
    const Rational N(static_cast<long>(search_cells));
    Rational best = -1;
    std::pair<std::size_t, std::size_t> arg{0, 0};
    for (std::size_t a = 0; a < search_cells; ++a)
        for (std::size_t c = 0; c < search_cells; ++c) {
            if (a == c) continue;
            StepFunction<Rational> f = StepFunction<Rational>::indicator(Rational(static_cast<long>(a)) / N,
                                                                         Rational(static_cast<long>(a + 1)) / N, N / 2);
            f -= StepFunction<Rational>::indicator(Rational(static_cast<long>(c)) / N, Rational(static_cast<long>(c + 1)) / N, N / 2);
            const Rational d = kolmogorov_midrange_distance(f);
            if (d > best) {
                best = d;
                arg = {a + 1, c + 1};
            }
        }
    if (best > Rational(1, 4)) throw CertificateInvalid("dipole exceeds the oscillation bound");
    json w;
    w["approximating_subspace"] = "constants";
    w["oscillation_bound"] = "1/2";
    w["search_cells"] = search_cells;
    w["search_max"] = to_string(best);
    w["search_argmax_cells"] = {arg.first, arg.second};
    w["attained"] = best == Rational(1, 4);
    b.witness = std::move(w);
    return b;
}

StepFunction<Rational> kolmogorov_test_function(unsigned k)
{
    if (k < 1) throw DomainError("test function index must be >= 1");
    const Rational a = Rational(1) / (Rational(2) * (mpz_class(1) << k));
    const Rational b = Rational(1) / Rational(mpz_class(1) << k);
    const Rational height(mpz_class(1) << k);
    StepFunction<Rational> f = StepFunction<Rational>::indicator(a, b, height);
    f -= StepFunction<Rational>::indicator(Rational(1) - b, Rational(1) - a, height);
    return f;
}

KolmogorovAdversary constants_adversary()
{
    return {"constants", 1, [](const std::vector<double>& pts) {
                return Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(pts.size()), 1).eval();
            }};
}

KolmogorovAdversary polynomial_adversary(std::size_t degree)
{
    return {"polynomials of degree <= " + std::to_string(degree), degree + 1, [degree](const std::vector<double>& pts) {
                Eigen::MatrixXd B(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(degree + 1));
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    const double s = 2.0 * pts[i] - 1.0;
                    double t0 = 1.0, t1 = s;
                    for (std::size_t j = 0; j <= degree; ++j) {
                        double tj;
                        if (j == 0) tj = t0;
                        else if (j == 1) tj = t1;
                        else {
                            tj = 2.0 * s * t1 - t0;
                            t0 = t1;
                            t1 = tj;
                        }
                        B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = tj;
                    }
                }
                return B;
            }};
}

KolmogorovAdversary random_volterra_adversary(std::size_t dim, std::size_t N, std::uint64_t seed)
{
    Eigen::MatrixXd nodes = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(dim));
    if (dim > 0) {
        std::mt19937_64 rng(seed);
        const StepSubspace E = random_mean_zero_subspace(dim, N, rng);
        nodes.block(1, 0, static_cast<Eigen::Index>(N - 1), static_cast<Eigen::Index>(dim)) = E.volterra_interior_nodes();
    }
    return {"span of " + std::to_string(dim) + " random V-images", dim, [nodes](const std::vector<double>& pts) {
                Eigen::MatrixXd B(static_cast<Eigen::Index>(pts.size()), nodes.cols());
                for (Eigen::Index j = 0; j < nodes.cols(); ++j)
                    for (std::size_t i = 0; i < pts.size(); ++i)
                        B(static_cast<Eigen::Index>(i), j) = interpolate_uniform(nodes.col(j), pts[i]);
                return B;
            }};
}

std::vector<KolmogorovAdversary> shipped_kolmogorov_adversaries(std::size_t n, std::uint64_t seed)
{
    if (n < 2) throw DomainError("Kolmogorov adversaries need n >= 2");
    return {constants_adversary(), polynomial_adversary(n - 2), random_volterra_adversary(n - 1, 64, seed)};
}

SNumberBound kolmogorov_lower_witness(std::size_t n, unsigned k_max, const std::vector<KolmogorovAdversary>& adversaries,
                                      const KolmogorovOptions& options)
{
    if (n < 2) throw DomainError("Kolmogorov lower bound is for n >= 2; d_1 = ||V||");
    if (k_max < 2) throw DomainError("k_max must be >= 2");
    if (adversaries.empty()) throw DomainError("at least one adversary subspace is required");

    std::vector<StepFunction<Rational>> fs;
    std::vector<Rational> points{Rational(0), Rational(1)};
    for (unsigned k = 1; k <= k_max; ++k) {
        fs.push_back(kolmogorov_test_function(k));
        const auto& f = fs.back();
        for (const auto& bp : f.breakpoints())
            if (denominator_bits(bp) > options.bit_budget)
                throw CapacityError("k_max = " + std::to_string(k_max) + " exceeds the exact-arithmetic bit budget");
        const VolterraCurve<Rational> v(f);
        const Rational s = Rational(1) / Rational(mpz_class(1) << k);
        if (f.l1_norm() != 1 || v(Rational(0)) != 0 || v(s) != Rational(1, 2))
            throw CertificateInvalid("test function f_" + std::to_string(k) + " lacks its defining values");
        points.insert(points.end(), f.breakpoints().begin(), f.breakpoints().end());
    }
    for (std::size_t i = 1; i < options.uniform_samples; ++i) {
        points.emplace_back(static_cast<long>(i), static_cast<long>(options.uniform_samples));
        points.back().canonicalize();
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<double> pts;
    for (const auto& p : points) pts.push_back(p.get_d());

    std::vector<Eigen::VectorXd> targets;
    for (const auto& f : fs) {
        const VolterraCurve<Rational> v(f);
        Eigen::VectorXd t(static_cast<Eigen::Index>(points.size()));
        for (std::size_t i = 0; i < points.size(); ++i) t(static_cast<Eigen::Index>(i)) = v(points[i]).get_d();
        targets.push_back(std::move(t));
    }

    SNumberBound b;
    b.kind = SNumberKind::kolmogorov;
    b.n = n;
    b.mode = ArithmeticMode::exact;
    b.anchor = "Kolmogorov lower bound: two-point limit of V f_k against candidate subspaces";
    b.upper = 0.25;
    b.upper_exact = Rational(1, 4);
    json w;
    w["k_max"] = k_max;
    w["sample_points"] = pts.size();
    // Vf_k(0) = 0 and Vf_k(2^{-k}) = 1/2 with 2^{-k} -> 0.
    w["two_point_bound"] = to_string((Rational(1, 2) - Rational(0)) / 2);
    w["scope"] = "against the supplied candidate subspaces";
    json per = json::array();
    double lower = inf;
    for (const auto& adv : adversaries) {
        if (adv.dim >= n) throw DomainError("adversary '" + adv.name + "' has dimension >= n");
        const Eigen::MatrixXd B = adv.basis(pts);
        if (static_cast<std::size_t>(B.cols()) != adv.dim) throw DomainError("adversary basis has the wrong dimension");
        double worst = 0.0;
        unsigned worst_k = 0;
        double residual = 0.0;
        for (unsigned k = 1; k <= k_max; ++k) {
            const auto d = chebyshev_distance(B, targets[k - 1]);
            residual = std::max(residual, d.residual);
            if (d.distance > worst) {
                worst = d.distance;
                worst_k = k;
            }
        }
        per.push_back(json{{"name", adv.name}, {"dim", adv.dim}, {"sup_k_distance", worst}, {"attaining_k", worst_k},
                           {"dual_residual", residual}});
        lower = std::min(lower, worst);
    }
    b.lower = lower;
    w["adversaries"] = per;
    w["delta"] = 0.25 - lower;
    b.witness = std::move(w);
    return b;
}

SNumberBound approximation_upper(std::size_t n)
{
    if (n < 1) throw DomainError("approximation bound needs n >= 1");
    SNumberBound b;
    b.kind = SNumberKind::approximation;
    b.n = n;
    b.mode = ArithmeticMode::exact;
    b.anchor = "approximation upper bound: rank-zero approximant, ||V|| = 1/2";
    b.upper = 0.5;
    b.upper_exact = Rational(1, 2);
    b.witness = json{{"approximant_rank", 0},
                     {"operator_norm", "1/2"},
                     {"reason", "|Vf(t)| <= min(int_0^t |f|, int_t^1 |f|) <= ||f||_1 / 2 for mean-zero f"}};
    return b;
}

}  // namespace snum
