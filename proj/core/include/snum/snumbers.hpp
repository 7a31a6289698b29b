#pragma once

#include "snum/grid_function.hpp"
#include "snum/hilbert.hpp"
#include "snum/lorentz.hpp"
#include "snum/scalar.hpp"
#include "snum/step_function.hpp"
#include "snum/zigzag.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace snum {

enum class SNumberKind { approximation, gelfand, kolmogorov, bernstein, isomorphism };

// Single-letter codes a, c, d, b, i.
char kind_code(SNumberKind kind);
SNumberKind parse_kind(char code);
std::string kind_name(SNumberKind kind);

// certified: the interval provably contains s_n for the stated scope.
// uncertified: a heuristic value; never used by consistency checks.
// inconclusive: the search did not produce a witness within budget.
enum class BoundStatus { certified, uncertified, inconclusive };
std::string to_string(BoundStatus status);
BoundStatus parse_status(std::string_view text);

inline const std::string volterra_label = "V: L^1_0(0,1) -> C[0,1]";
std::string cube_embedding_label(int d, const LorentzParams& X);

struct SNumberBound {
    SNumberKind kind = SNumberKind::approximation;
    std::size_t n = 1;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::optional<Rational> lower_exact;
    std::optional<Rational> upper_exact;
    ArithmeticMode mode = ArithmeticMode::floating;
    BoundStatus status = BoundStatus::certified;
    std::string operator_label = volterra_label;
    // Which construction produced the bound.
    std::string anchor;
    nlohmann::json witness = nlohmann::json::object();
};

// ---------------------------------------------------------------------------
// One-dimensional: V on mean-zero step functions.

// n step functions on the uniform N-grid, stored as an N x n matrix of cell values.
class StepSubspace {
public:
    // Throws DomainError when the columns are dependent or, with
    // require_mean_zero, when a column does not integrate to 0 (1e-12).
    StepSubspace(Eigen::MatrixXd cell_values, bool require_mean_zero = true);

    std::size_t cells() const { return static_cast<std::size_t>(values_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(values_.cols()); }
    const Eigen::MatrixXd& cell_values() const { return values_; }

    StepFunction<double> element(const Eigen::VectorXd& coefficients) const;
    // V applied to the basis, sampled at the interior nodes 1/N, ..., (N-1)/N.
    Eigen::MatrixXd volterra_interior_nodes() const;
    // ||sum c_i f_i||_1.
    double l1_norm(const Eigen::VectorXd& coefficients) const;

private:
    Eigen::MatrixXd values_;
};

// n random mean-zero step functions on N cells with values uniform in [-1, 1] before centring.
StepSubspace random_mean_zero_subspace(std::size_t n, std::size_t N, std::mt19937_64& rng);
// Images of the unit vectors under the dipole synthesis map:
// 2n (chi_{I_{2k-1}} - chi_{I_{2k}}), I_k = [(k-1)/2n, k/2n]. Needs 2n | N.
StepSubspace dipole_subspace(std::size_t n, std::size_t N);

// Lower bound 1/(||A|| ||B||) = 1/(2n) from evaluation at the points (2k-1)/2n
// and dipole synthesis. The identity A V B = Id is checked on every unit
// vector (exactly in exact mode) and ||B|| by enumerating the 2^n vertices of
// the cube. Throws DomainError unless 2n | N.
SNumberBound isomorphism_lower_1d(std::size_t n, std::size_t N, ArithmeticMode mode = ArithmeticMode::exact);

// Upper bound for the Bernstein ratio inf ||Vf||/||f||_1 over E: a zigzag
// element g of V(E) pulls back to h with ||h||_1 >= 2n by telescoping, so the
// ratio is at most ||g||_inf / (2n). Status inconclusive if the search fails.
SNumberBound bernstein_upper_1d(const StepSubspace& E, const ZigzagOptions& options = {});

// The Bernstein ratio of E itself, which bounds b_n from below. Exact vertex
// enumeration of {c : ||V E c||_inf <= 1} for n <= 3; multi-start subgradient
// descent (uncertified) for n >= 4.
SNumberBound bernstein_lower(const StepSubspace& E, std::uint64_t seed = 0);

struct GelfandWitness {
    StepFunction<double> f;
    double split_point = 0.0;
    double class_measure = 0.0;
    double vf_at_split = 0.0;
    double l1_norm = 0.0;
    double max_pairing = 0.0;
    double rho_bound = 0.0;
};

// For functionals g_1..g_m: quantize the signed values of each g_k into cells
// of width eps, take the largest-measure class of points sharing all cells,
// split it at its measure median x and put mass +1/2 before x and -1/2 after.
// Then Vf(x) = 1/2, ||f||_1 = 1, |int f g_k| < eps/2, and every admissible rho
// in the dual characterisation of c_n is at least ||Vf|| - max_k |int f g_k|.
GelfandWitness gelfand_lower_adversary(const std::vector<StepFunction<double>>& functionals, double eps);

// Functional families.
std::vector<StepFunction<double>> random_step_functionals(std::size_t m, std::size_t N, std::mt19937_64& rng);
// g_k = chi_[0, k/(m+1)], so int f g_k = Vf(k/(m+1)).
std::vector<StepFunction<double>> node_evaluation_functionals(std::size_t m);
// cos and sin modes sampled at cell midpoints of the N-grid.
std::vector<StepFunction<double>> fourier_functionals(std::size_t m, std::size_t N);

// c_n >= min over the given functional sets (each of size < n) of rho_bound.
SNumberBound gelfand_lower(std::size_t n, const std::vector<std::vector<StepFunction<double>>>& adversaries, double eps);

// inf_c ||Vf - c||_inf = (max Vf - min Vf)/2. Throws PreconditionError
// unless f is mean-zero (|int f| <= 1e-12 in float mode).
double kolmogorov_midrange_distance(const StepFunction<double>& f);
Rational kolmogorov_midrange_distance(const StepFunction<Rational>& f);

// d_n <= 1/4 with N = constants: osc Vf <= 1/2 on the unit ball. A dipole
// search on the search grid confirms that 1/4 is attained. Throws DomainError for n < 2.
SNumberBound kolmogorov_upper_1d(std::size_t n, std::size_t search_cells = 64);

// 2^k (chi_(2^{-k-1}, 2^{-k}) - chi_(1-2^{-k}, 1-2^{-k-1})).
StepFunction<Rational> kolmogorov_test_function(unsigned k);

// A candidate subspace, given by its basis sampled at the requested points.
struct KolmogorovAdversary {
    std::string name;
    std::size_t dim = 0;
    std::function<Eigen::MatrixXd(const std::vector<double>& points)> basis;
};

KolmogorovAdversary constants_adversary();
// Polynomials of degree <= degree (dimension degree + 1), Chebyshev basis on [0,1].
KolmogorovAdversary polynomial_adversary(std::size_t degree);
// Span of V applied to dim random mean-zero step functions on N cells.
KolmogorovAdversary random_volterra_adversary(std::size_t dim, std::size_t N, std::uint64_t seed);
// constants, polynomials of dimension n-1 and random V-images of dimension n-1.
std::vector<KolmogorovAdversary> shipped_kolmogorov_adversaries(std::size_t n, std::uint64_t seed = 0);

struct KolmogorovOptions {
    // Breakpoints of f_k have k+1 denominator bits; keeping them within the
    // double mantissa makes the sample points exact.
    std::size_t bit_budget = 52;
    std::size_t uniform_samples = 256;
};

// d_n >= min over adversaries N (dim N < n) of max_{k <= k_max} dist(Vf_k, N),
// with distances computed on a finite point set containing 0 and 2^{-k}
// (a lower bound for the sup-norm distance). Throws CapacityError when
// k_max exceeds the bit budget, DomainError for n < 2, k_max < 2, or an
// adversary of dimension >= n.
SNumberBound kolmogorov_lower_witness(std::size_t n, unsigned k_max, const std::vector<KolmogorovAdversary>& adversaries,
                                      const KolmogorovOptions& options = {});

// a_n <= ||V|| = 1/2 with the rank-zero approximant.
SNumberBound approximation_upper(std::size_t n);

// ---------------------------------------------------------------------------
// The cube: V_0^1 X(Q) -> C(Q).

// ||V_0^1 L^{d,1}(Q) -> C(Q)|| <= 1/(d v_d^{1/d}), v_d the unit ball volume.
double embedding_norm_upper(int d);

struct HatConstruction {
    int dim = 2;
    int m = 1;
    int cells_per_side = 2;
    int radius_cells = 1;
    double radius = 0.5;
    std::vector<std::vector<int>> centers;
    std::vector<GridFunction> hats;
};

// m^d l-infinity pyramids of radius r = 1/(2m) centred at the points
// ((2k-1)/(2m))_i; their supports tile Q. Throws ConstructionError unless
// 2m | cells_per_side (default 2m).
HatConstruction hat_construction(int d, int m, int cells_per_side = 0);

// Lower bound r / ||chi_Q||_X = n^{-1/d} / (2 ||chi_Q||_X), n = m^d, from the
// hat factorisation. Exact when ||chi_Q||_X is rational. X must embed into C:
// p > d, or p = d with q = 1 (UnsupportedRegime otherwise).
SNumberBound isomorphism_lower_ddim(int d, int m, const LorentzParams& X, int cells_per_side = 0,
                                    ArithmeticMode mode = ArithmeticMode::exact);

// inf ||u||_inf / ||grad u||_X over the hat span. The gradient norm grows
// with every |y_k| while ||u||_inf = r ||y||_inf, so the infimum sits at y = 1.
double hat_subspace_bernstein_ratio(const HatConstruction& hats, const LorentzParams& X);

struct GridSubspace {
    std::vector<GridFunction> basis;
    std::size_t dim() const { return basis.size(); }
};

// n random boundary-zero grid functions with interior nodal values uniform in [-1, 1].
GridSubspace random_grid_subspace(std::size_t n, int d, int cells_per_side, std::mt19937_64& rng);

struct ChainLink {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
};

// Upper bound for the Bernstein ratio of E over L^{d,1}: sample E at the
// Hilbert-ordered centres of the level-k cubes, find a zigzag element v, and
// run the chain 2(n-1) <= sum osc(v; Omega_j) <= sum C_j ||grad v chi_j||
// <= (sum C_j^{d'})^{1/d'} (sum ||grad v chi_j||^d)^{1/d}
// <= (sum C_j^{d'})^{1/d'} 2^{1/d} ||grad v||, every link logged.
// For n = 1 the bound is embedding_norm_upper(d).
SNumberBound bernstein_upper_ddim(const GridSubspace& E, int k, const ZigzagOptions& options = {});

// Chain links recorded in a bernstein_upper_ddim witness.
std::vector<ChainLink> chain_links(const SNumberBound& bound);

}  // namespace snum
