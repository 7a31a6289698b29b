#include "snum/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace snum {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::string describe(const SNumberBound& b)
{
    std::ostringstream os;
    os << kind_code(b.kind) << "_" << b.n << " [" << b.lower << ", " << b.upper << "]";
    return os.str();
}

// s_n(T) <= t_n(T) for all T.
bool kind_le(SNumberKind s, SNumberKind t)
{
    return s == t || s == SNumberKind::isomorphism || t == SNumberKind::approximation;
}

bool leq(double a, double b, double tol)
{
    if (std::isinf(a) || std::isinf(b)) return a <= b;
    return a <= b + tol * std::max(1.0, std::abs(b));
}

}  // namespace

AxiomReport snumber_axiom_suite(const std::vector<SNumberBound>& bounds, const std::map<std::string, double>& norms, double tol)
{
    AxiomReport r;
    std::vector<const SNumberBound*> cert;
    for (const auto& b : bounds)
        if (b.status == BoundStatus::certified) cert.push_back(&b);

    auto fail = [&](std::string rule, std::string detail) {
        r.ok = false;
        r.violations.push_back({std::move(rule), std::move(detail)});
    };

    for (const auto* b : cert) {
        ++r.checks;
        if (!leq(b->lower, b->upper, tol)) fail("lower <= upper", describe(*b));
        const auto it = norms.find(b->operator_label);
        if (it == norms.end()) continue;
        ++r.checks;
        if (!leq(b->lower, it->second, tol)) fail("s_n <= ||T||", describe(*b));
        if (b->n == 1 && std::isfinite(b->upper)) {
            ++r.checks;
            if (b->upper < it->second * (1.0 - tol)) fail("s_1 = ||T||", describe(*b));
        }
    }

    for (const auto* A : cert)
        for (const auto* B : cert) {
            if (A->operator_label != B->operator_label) continue;
            if (A->n < B->n || !kind_le(A->kind, B->kind)) continue;
            ++r.checks;
            if (!leq(A->lower, B->upper, tol))
                fail("monotone ordering s_n <= t_m (n >= m)", describe(*A) + " vs " + describe(*B));
        }

    // b_n <= max(c_n, d_n) and c, d are non-increasing in n.
    for (const auto* b : cert) {
        if (b->kind != SNumberKind::bernstein || !std::isfinite(b->lower)) continue;
        double c = inf, d = inf;
        for (const auto* o : cert) {
            if (o->operator_label != b->operator_label || o->n > b->n) continue;
            if (o->kind == SNumberKind::gelfand) c = std::min(c, o->upper);
            if (o->kind == SNumberKind::kolmogorov) d = std::min(d, o->upper);
        }
        if (std::isinf(c) || std::isinf(d)) continue;
        ++r.checks;
        if (!leq(b->lower, std::max(c, d), tol)) fail("b_n <= max(c_n, d_n)", describe(*b));
    }
    return r;
}

}  // namespace snum
