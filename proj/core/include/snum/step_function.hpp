#pragma once

#include "snum/scalar.hpp"

#include <cstddef>
#include <vector>

namespace snum {

// Piecewise constant function on [0,1].
// breakpoints: 0 = b_0 < b_1 < ... < b_m = 1; values[i] lives on [b_i, b_{i+1}).
template <class T>
class StepFunction {
public:
    using value_type = T;

    // The zero function, one piece.
    StepFunction();
    StepFunction(std::vector<T> breakpoints, std::vector<T> values);

    // N equal cells with the given values.
    static StepFunction uniform(const std::vector<T>& values);
    // height on [a,b), zero elsewhere. Requires 0 <= a < b <= 1.
    static StepFunction indicator(const T& a, const T& b, const T& height = T(1));

    const std::vector<T>& breakpoints() const { return breakpoints_; }
    const std::vector<T>& values() const { return values_; }
    std::size_t pieces() const { return values_.size(); }
    T length(std::size_t piece) const { return breakpoints_[piece + 1] - breakpoints_[piece]; }

    // Right-continuous evaluation; at x = 1 the last value.
    T operator()(const T& x) const;

    T integral() const;
    T l1_norm() const;
    // Integral over [0, x].
    T integral_to(const T& x) const;

    // Adjacent equal values merged. Norm preserving.
    StepFunction canonical() const;

    StepFunction operator-() const;
    StepFunction& operator+=(const StepFunction& other);
    StepFunction& operator-=(const StepFunction& other);
    StepFunction& operator*=(const T& c);

    bool operator==(const StepFunction& other) const;

    // Pointwise product on the common refinement.
    StepFunction product(const StepFunction& other) const;

private:
    std::vector<T> breakpoints_;
    std::vector<T> values_;
};

template <class T>
StepFunction<T> operator+(StepFunction<T> a, const StepFunction<T>& b) { return a += b; }
template <class T>
StepFunction<T> operator-(StepFunction<T> a, const StepFunction<T>& b) { return a -= b; }
template <class T>
StepFunction<T> operator*(const T& c, StepFunction<T> f) { return f *= c; }

// Union of the breakpoint sets, sorted.
template <class T>
std::vector<T> common_refinement(const std::vector<const StepFunction<T>*>& fs);

// Values of f on the pieces of a refinement of its breakpoints.
template <class T>
std::vector<T> values_on(const StepFunction<T>& f, const std::vector<T>& refinement);

StepFunction<double> to_double(const StepFunction<Rational>& f);
StepFunction<Rational> to_exact(const StepFunction<double>& f);

// A step function with |integral| <= tolerance.
struct MeanZeroTag {
    double tolerance = 0.0;

    bool accepts(const StepFunction<double>& f) const;
    // Exact mode uses tolerance 0 regardless of the field.
    bool accepts(const StepFunction<Rational>& f) const;
};

extern template class StepFunction<double>;
extern template class StepFunction<Rational>;

}  // namespace snum
