#pragma once

#include "snum/scalar.hpp"
#include "snum/step_function.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace snum {

// (|value|, measure) pairs describing a simple function up to rearrangement.
// Entries with value 0 or measure 0 are ignored; repeated values are allowed.
using ValueMeasure = std::vector<std::pair<double, double>>;

struct LorentzParams {
    double p = 1.0;
    double q = 1.0;

    // Throws DomainError for p < 1 or q < 1, UnsupportedRegime for q > p.
    static LorentzParams make(double p, double q);
};

ValueMeasure value_measure(const StepFunction<double>& f);

// |{x : |f(x)| > t}|. Throws DomainError for t < 0.
double distribution_function(const ValueMeasure& f, double t);
double distribution_function(const StepFunction<double>& f, double t);
Rational distribution_function(const StepFunction<Rational>& f, const Rational& t);

// (p * int_0^inf mu(s)^{q/p} s^{q-1} ds)^{1/q}, summed in closed form over the
// intervals where mu is constant.
double lorentz_norm(const ValueMeasure& f, const LorentzParams& params);
double lorentz_norm(const StepFunction<double>& f, const LorentzParams& params);

// Norm of the indicator of a set of the given measure: (p/q)^{1/q} |E|^{1/p}.
double indicator_lorentz_norm(double measure, const LorentzParams& params);

// Exact norm of the indicator of a unit-measure set when it is rational
// (q = 1 and integer p give exactly p).
std::optional<Rational> unit_indicator_norm_exact(const LorentzParams& params);

}  // namespace snum
