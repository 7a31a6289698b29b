#pragma once

#include "snum/step_function.hpp"

#include <cstddef>
#include <vector>

namespace snum {

// Vf(t) = int_0^t f for a step function f: continuous, piecewise linear,
// with nodes at the breakpoints of f.
template <class T>
class VolterraCurve {
public:
    explicit VolterraCurve(const StepFunction<T>& f);

    const std::vector<T>& nodes() const { return nodes_; }
    const std::vector<T>& node_values() const { return values_; }

    T operator()(const T& t) const;
    T max_value() const;
    T min_value() const;
    // A piecewise linear function attains its extrema at nodes.
    T sup_norm() const;
    // Node where |Vf| is largest (first one on ties).
    T argmax_abs() const;
    // Slope field; equals the canonical form of f.
    StepFunction<T> slopes() const;

    // Same function on [0,1], compared at the union of the node sets.
    bool operator==(const VolterraCurve& other) const;

private:
    std::vector<T> nodes_;
    std::vector<T> values_;
};

template <class T>
VolterraCurve<T> volterra_apply(const StepFunction<T>& f) { return VolterraCurve<T>(f); }

double sup_norm(const VolterraCurve<double>& v);
Rational sup_norm(const VolterraCurve<Rational>& v);

// f minus its mean. Exact in exact mode.
template <class T>
StepFunction<T> mean_zero_project(const StepFunction<T>& f);

enum class DensityClass { mean_zero, nonnegative };

struct DiscreteNormResult {
    Rational value;
    StepFunction<Rational> witness;
    std::size_t vertices_checked = 0;
};

// sup ||Vf||_inf over step functions on the uniform N-grid with ||f||_1 = 1 in
// the given class. The convex objective peaks at a vertex of the feasible
// polytope, so the vertices are enumerated exactly: (N/2)(e_a - e_b) for
// mean-zero densities and N e_a for nonnegative ones. Throws DomainError for
// N < 2.
DiscreteNormResult operator_norm_discrete(std::size_t N, DensityClass cls = DensityClass::mean_zero);

extern template class VolterraCurve<double>;
extern template class VolterraCurve<Rational>;

}  // namespace snum
