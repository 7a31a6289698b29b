#include "CLI11.hpp"

#include "snum/acceptance.hpp"
#include "snum/axioms.hpp"
#include "snum/error.hpp"
#include "snum/hilbert.hpp"
#include "snum/john.hpp"
#include "snum/serialization.hpp"
#include "snum/snumbers.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace snum;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "1..5", "1,2,4" or a mix such as "1..3,8".
std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoul(item));
            } else {
                const std::size_t a = std::stoul(item.substr(0, dots));
                const std::size_t b = std::stoul(item.substr(dots + 2));
                if (a > b) throw UsageError("empty range " + item);
                for (std::size_t v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const std::logic_error&) {
            throw UsageError("cannot parse list item '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::vector<SNumberKind> parse_kinds(const std::string& text)
{
    std::vector<SNumberKind> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.size() != 1) throw UsageError("kind must be one of a,c,d,b,i: '" + item + "'");
        try {
            out.push_back(parse_kind(item[0]));
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }
    return out;
}

bool has_kind(const std::vector<SNumberKind>& kinds, SNumberKind k)
{
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

std::string cell(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

struct Outputs {
    fs::path json_path;
    fs::path csv_path;
    fs::path witness_dir;
    std::string plot_path;
};

Outputs resolve_outputs(const std::string& out, const std::string& csv, const std::string& witness_dir)
{
    Outputs o;
    o.json_path = out;
    o.csv_path = csv.empty() ? fs::path(out).replace_extension(".csv") : fs::path(csv);
    o.witness_dir = witness_dir.empty() ? fs::path(out).parent_path() / (fs::path(out).stem().string() + "_witnesses")
                                        : fs::path(witness_dir);
    return o;
}

// Writes records, CSV and witnesses; checks certified bounds for consistency.
int emit(const std::vector<std::pair<std::string, SNumberBound>>& tagged, const Outputs& o,
         const std::map<std::string, double>& norms, double scale_exponent)
{
    json records = json::array();
    std::ostringstream csv;
    csv << "kind,n,lower,upper,status,witness_path\n";
    std::ostringstream plot;
    plot << "# kind n lower upper lower*n^s upper*n^s (s = " << scale_exponent << ")\n";
    std::vector<SNumberBound> bounds;
    for (const auto& [tag, b] : tagged) {
        const fs::path wpath = o.witness_dir / (std::string(1, kind_code(b.kind)) + "_" + std::to_string(b.n) + "_" + tag + ".json");
        write_file(wpath, b.witness.dump(2) + "\n");
        json r = to_json(b);
        r.erase("witness");
        r["witness_path"] = wpath.string();
        records.push_back(std::move(r));
        csv << kind_code(b.kind) << "," << b.n << "," << cell(b.lower) << "," << cell(b.upper) << "," << to_string(b.status)
            << "," << wpath.string() << "\n";
        const double s = std::pow(static_cast<double>(b.n), scale_exponent);
        plot << kind_code(b.kind) << " " << b.n << " " << cell(b.lower) << " " << cell(b.upper) << " " << cell(b.lower * s) << " "
             << cell(b.upper * s) << "\n";
        bounds.push_back(b);
    }
    write_file(o.json_path, records.dump(2) + "\n");
    write_file(o.csv_path, csv.str());
    if (!o.plot_path.empty()) write_file(o.plot_path, plot.str());
    std::cout << csv.str();

    const AxiomReport report = snumber_axiom_suite(bounds, norms);
    if (!report.ok) {
        std::cerr << "certified-invariant violations:\n";
        for (const auto& v : report.violations) std::cerr << "  " << v.rule << ": " << v.detail << "\n";
        return exit_violation;
    }
    return exit_ok;
}

struct VolterraArgs {
    std::string n = "1..5";
    std::size_t grid = 240;
    std::string kinds = "a,c,d,b,i";
    std::string mode = "exact";
    std::uint64_t seed = 0;
    std::string out = "results.json";
    std::string csv;
    std::string witness_dir;
    std::string plot;
    double epsilon = 0.05;
};

int run_volterra(const VolterraArgs& a)
{
    const auto ns = parse_list(a.n);
    const auto kinds = parse_kinds(a.kinds);
    ArithmeticMode mode;
    try {
        mode = parse_mode(a.mode);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    for (auto n : ns) {
        if (n < 1) throw UsageError("n must be >= 1");
        if ((has_kind(kinds, SNumberKind::isomorphism) || has_kind(kinds, SNumberKind::bernstein)) && a.grid % (2 * n) != 0)
            throw UsageError("grid " + std::to_string(a.grid) + " is not divisible by 2n = " + std::to_string(2 * n));
        if (a.grid < n + 1) throw UsageError("grid must exceed n");
    }

    std::vector<std::pair<std::string, SNumberBound>> out;
    for (auto n : ns) {
        const std::uint64_t seed = a.seed * 1000003u + n;
        for (auto kind : kinds) {
            switch (kind) {
            case SNumberKind::isomorphism:
                out.emplace_back("factorization", isomorphism_lower_1d(n, a.grid, mode));
                break;
            case SNumberKind::bernstein: {
                std::mt19937_64 rng(seed);
                ZigzagOptions opt;
                opt.epsilon = a.epsilon;
                opt.seed = seed;
                out.emplace_back("zigzag", bernstein_upper_1d(random_mean_zero_subspace(n, a.grid, rng), opt));
                if (n <= 3) out.emplace_back("dipole_span", bernstein_lower(dipole_subspace(n, a.grid), seed));
                break;
            }
            case SNumberKind::gelfand: {
                std::mt19937_64 rng(seed);
                const std::size_t m = std::min<std::size_t>(4, n - 1);
                std::vector<std::vector<StepFunction<double>>> sets;
                if (m > 0) {
                    for (int s = 0; s < 20; ++s) sets.push_back(random_step_functionals(1 + rng() % m, 64, rng));
                    sets.push_back(node_evaluation_functionals(m));
                    sets.push_back(fourier_functionals(m, 64));
                }
                out.emplace_back("split_dipole", gelfand_lower(n, sets, 1e-3));
                break;
            }
            case SNumberKind::kolmogorov:
                if (n < 2) {
                    std::cerr << "note: d_1 = ||V||; kolmogorov rows start at n = 2\n";
                    break;
                }
                out.emplace_back("midrange", kolmogorov_upper_1d(n));
                out.emplace_back("test_functions", kolmogorov_lower_witness(n, 10, shipped_kolmogorov_adversaries(n, seed)));
                break;
            case SNumberKind::approximation:
                out.emplace_back("rank_zero", approximation_upper(n));
                break;
            }
        }
    }
    Outputs o = resolve_outputs(a.out, a.csv, a.witness_dir);
    o.plot_path = a.plot;
    return emit(out, o, {{volterra_label, 0.5}}, 1.0);
}

struct CubeArgs {
    int dim = 2;
    std::string m = "1,2,4,8";
    std::string space = "d,1";
    int curve_order = 4;
    int grid = 0;
    std::string kinds = "i,b";
    std::size_t max_zigzag_n = 16;
    std::uint64_t seed = 0;
    std::string out = "results.json";
    std::string csv;
    std::string witness_dir;
    std::string plot;
};

LorentzParams parse_space(const std::string& text, int d)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--space expects p,q");
    auto value = [&](const std::string& s) -> double {
        if (s == "d") return d;
        try {
            return std::stod(s);
        } catch (const std::logic_error&) {
            throw UsageError("cannot parse exponent '" + s + "'");
        }
    };
    try {
        return LorentzParams::make(value(text.substr(0, comma)), value(text.substr(comma + 1)));
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

int run_cube(const CubeArgs& a)
{
    if (a.dim < 2 || a.dim > 4) throw UsageError("--dim must be in 2..4");
    const auto ms = parse_list(a.m);
    const auto kinds = parse_kinds(a.kinds);
    const LorentzParams X = parse_space(a.space, a.dim);
    if (!(X.p > a.dim || (X.p == a.dim && X.q == 1))) throw UsageError("the space does not embed into C for this dimension");
    if (a.curve_order < 1 || a.dim * a.curve_order > max_ordering_bits) throw UsageError("--curve-order out of range");

    std::vector<std::pair<std::string, SNumberBound>> out;
    for (auto m : ms) {
        const int mi = static_cast<int>(m);
        if (mi < 1) throw UsageError("m must be >= 1");
        if (a.grid != 0 && a.grid % (2 * mi) != 0) throw UsageError("--grid must be a multiple of 2m");
        const HatConstruction hats = hat_construction(a.dim, mi, a.grid);
        const std::size_t n = hats.hats.size();
        if (has_kind(kinds, SNumberKind::isomorphism)) out.emplace_back("hats", isomorphism_lower_ddim(a.dim, mi, X, a.grid));
        if (has_kind(kinds, SNumberKind::bernstein)) {
            // The hat span is an n-dimensional subspace, so its ratio bounds b_n below.
            SNumberBound lower;
            lower.kind = SNumberKind::bernstein;
            lower.n = n;
            lower.operator_label = cube_embedding_label(a.dim, X);
            lower.anchor = "Bernstein lower bound: ratio of the hat span";
            lower.lower = hat_subspace_bernstein_ratio(hats, X);
            lower.witness = json{{"m", mi}, {"cells_per_side", hats.cells_per_side}, {"extremal_coefficients", "all ones"}};
            out.emplace_back("hat_span", lower);

            const bool chain_space = X.p == a.dim && X.q == 1;
            const int side = 1 << a.curve_order;
            if (chain_space && n <= a.max_zigzag_n && static_cast<std::size_t>(1) << (a.dim * a.curve_order) >= n) {
                std::mt19937_64 rng(a.seed * 1000003u + n);
                const int ns = std::max(2 * side, a.grid - a.grid % side);
                ZigzagOptions opt;
                opt.seed = a.seed + n;
                out.emplace_back("chain", bernstein_upper_ddim(random_grid_subspace(n, a.dim, ns, rng), a.curve_order, opt));
            }
        }
    }
    Outputs o = resolve_outputs(a.out, a.csv, a.witness_dir);
    o.plot_path = a.plot;
    return emit(out, o, {}, 1.0 / a.dim);
}

int run_hilbert(int dim, int order, bool check, bool print, const std::string& curve)
{
    if (dim < 1 || order < 1 || dim * order > max_ordering_bits) throw UsageError("need d, k >= 1 and d*k <= " + std::to_string(max_ordering_bits));
    CubeOrdering o = curve == "hilbert" ? hilbert_order(dim, order)
                     : curve == "row-major" ? row_major_order(dim, order)
                     : curve == "serpentine" ? serpentine_order(dim, order)
                     : throw UsageError("unknown curve '" + curve + "'");
    json j{{"curve", o.name()}, {"dim", dim}, {"order", order}, {"cubes", o.size()}};
    bool ok = true;
    if (check) {
        const auto adj = check_face_adjacency(o);
        const auto nest = check_prefix_nesting(o);
        j["check_face_adjacency"] = adj.ok;
        if (adj.first_violation) j["adjacency_violation_index"] = *adj.first_violation;
        j["check_prefix_nesting"] = nest.ok;
        if (nest.first_violation) j["nesting_violation_cube"] = to_json(*nest.first_violation);
        ok = adj.ok && nest.ok;
    }
    if (print) {
        json cubes = json::array();
        for (CurveIndex t = 1; t <= o.size(); ++t) {
            const auto c = o.coords(t);
            cubes.push_back(std::vector<std::uint32_t>(c.begin(), c.end()));
        }
        j["coords"] = cubes;
    }
    std::cout << j.dump(2) << "\n";
    return ok ? exit_ok : exit_violation;
}

int run_john(int dim, int order, CurveIndex i, CurveIndex j, std::size_t samples, std::uint64_t seed, const std::string& out)
{
    if (dim < 1 || order < 1 || dim * order > max_ordering_bits) throw UsageError("need d, k >= 1 and d*k <= " + std::to_string(max_ordering_bits));
    auto o = std::make_shared<const CubeOrdering>(hilbert_order(dim, order));
    if (i < 1 || j < i || j > o->size()) throw UsageError("need 1 <= i <= j <= 2^{dk}");
    const CubeUnion omega(o, i, j);
    const JohnCertificate cert = john_bound_constructive(omega);
    const JohnVerification v = verify_john_certificate(omega, cert, samples, seed);
    json blocks = json::array();
    for (const auto& b : cert.blocks) blocks.push_back(json{{"first", b.first}, {"last", b.last}, {"cube", to_json(b.cube)}});
    json runs = json::array();
    for (const auto& r : cert.runs) runs.push_back(json{{"level", r.level}, {"count", r.count}, {"direction", r.direction}});
    json result{{"dim", dim},
                {"order", order},
                {"first", i},
                {"last", j},
                {"measure", omega.measure()},
                {"center", cert.center},
                {"constant", cert.constant},
                {"pivot_block", cert.pivot},
                {"blocks", blocks},
                {"runs", runs},
                {"verification",
                 {{"passed", v.passed},
                  {"worst_ratio", v.worst_ratio},
                  {"evaluations", v.evaluations},
                  {"worst_start", v.worst_start},
                  {"worst_point", v.worst_point}}}};
    if (!out.empty()) write_file(out, result.dump(2) + "\n");
    std::cout << "constant " << cert.constant << ", blocks " << cert.blocks.size() << ", worst ratio " << v.worst_ratio
              << ", evaluations " << v.evaluations << ": " << (v.passed ? "passed" : "FAILED") << "\n";
    return v.passed ? exit_ok : exit_violation;
}

int run_selftest(const std::string& mode, double tolerance, std::uint64_t seed, bool corrupt, const std::vector<int>& only)
{
    AcceptanceConfig c;
    try {
        c.mode = parse_mode(mode);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    c.float_tolerance = tolerance;
    c.seed = seed;
    c.corrupt_hilbert = corrupt;
    c.only = only;
    std::cout << "mode " << to_string(c.mode) << ", seed " << seed << "\n";
    bool ok = true;
    run_acceptance(c, [&](const CriterionResult& r) {
        ok = ok && r.passed;
        std::cout << format_result(r) << std::endl;
    });
    return ok ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"s-number bounds for the Volterra operator and Sobolev-Lorentz embeddings"};
    app.require_subcommand(1);

    VolterraArgs va;
    auto* vol = app.add_subcommand("volterra", "bounds for V: L^1_0(0,1) -> C[0,1]");
    vol->add_option("--n", va.n, "n values, e.g. 1..5 or 1,2,4")->capture_default_str();
    vol->add_option("--grid", va.grid, "cells N of the uniform grid")->capture_default_str();
    vol->add_option("--kinds", va.kinds, "subset of a,c,d,b,i")->capture_default_str();
    vol->add_option("--mode", va.mode, "exact or float")->capture_default_str();
    vol->add_option("--seed", va.seed)->capture_default_str();
    vol->add_option("--epsilon", va.epsilon, "zigzag tolerance")->capture_default_str();
    vol->add_option("--out", va.out, "results JSON")->capture_default_str();
    vol->add_option("--csv", va.csv, "summary CSV (default: next to --out)");
    vol->add_option("--witness-dir", va.witness_dir, "witness directory (default: <out>_witnesses)");
    vol->add_option("--plot", va.plot, "plot data file (n vs bounds)");

    CubeArgs ca;
    auto* cube = app.add_subcommand("cube", "bounds for V_0^1 L^{p,q}((0,1)^d) -> C");
    cube->add_option("--dim", ca.dim)->capture_default_str();
    cube->add_option("--m", ca.m, "hats per side; n = m^d")->capture_default_str();
    cube->add_option("--space", ca.space, "Lorentz exponents p,q; 'd' stands for the dimension")->capture_default_str();
    cube->add_option("--curve-order", ca.curve_order, "Hilbert level k for the Bernstein chain")->capture_default_str();
    cube->add_option("--grid", ca.grid, "cells per side (default 2m)")->capture_default_str();
    cube->add_option("--kinds", ca.kinds, "subset of i,b")->capture_default_str();
    cube->add_option("--max-zigzag-n", ca.max_zigzag_n, "largest n for the chain certificate")->capture_default_str();
    cube->add_option("--seed", ca.seed)->capture_default_str();
    cube->add_option("--out", ca.out)->capture_default_str();
    cube->add_option("--csv", ca.csv);
    cube->add_option("--witness-dir", ca.witness_dir);
    cube->add_option("--plot", ca.plot, "plot data file (log-log scaling)");

    int hdim = 2, horder = 3;
    bool hcheck = false, hprint = false;
    std::string hcurve = "hilbert";
    auto* hil = app.add_subcommand("hilbert", "build and check a cube ordering");
    hil->add_option("--dim", hdim)->capture_default_str();
    hil->add_option("--order", horder)->capture_default_str();
    hil->add_option("--curve", hcurve, "hilbert, row-major or serpentine")->capture_default_str();
    hil->add_flag("--check", hcheck, "run the adjacency and nesting checks");
    hil->add_flag("--print", hprint, "print the ordered cube coordinates");

    int jdim = 2, jorder = 3;
    CurveIndex ji = 1, jj = 1;
    std::size_t jsamples = 10000;
    std::uint64_t jseed = 0;
    std::string jout;
    auto* john = app.add_subcommand("john", "John certificate for a segment domain");
    john->add_option("--dim", jdim)->capture_default_str();
    john->add_option("--order", jorder)->capture_default_str();
    john->add_option("--i", ji, "first curve index (1-based)")->required();
    john->add_option("--j", jj, "last curve index")->required();
    john->add_option("--samples", jsamples)->capture_default_str();
    john->add_option("--seed", jseed)->capture_default_str();
    john->add_option("--out", jout, "certificate JSON");

    std::string smode = "exact";
    double stol = 1e-12;
    std::uint64_t sseed = 0;
    bool scorrupt = false;
    std::vector<int> sonly;
    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    self->add_option("--mode", smode)->capture_default_str();
    self->add_option("--tolerance", stol, "float-mode tolerance")->capture_default_str();
    self->add_option("--seed", sseed)->capture_default_str();
    self->add_option("--only", sonly, "criterion numbers to run");
    self->add_flag("--corrupt-hilbert", scorrupt, "fault injection: swap two Hilbert table entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*vol) return run_volterra(va);
        if (*cube) return run_cube(ca);
        if (*hil) return run_hilbert(hdim, horder, hcheck, hprint, hcurve);
        if (*john) return run_john(jdim, jorder, ji, jj, jsamples, jseed, jout);
        if (*self) return run_selftest(smode, stol, sseed, scorrupt, sonly);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UnsupportedRegime& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const CapacityError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_violation;
    }
    return exit_usage;
}
