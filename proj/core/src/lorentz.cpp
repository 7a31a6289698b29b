#include "snum/lorentz.hpp"

#include "snum/error.hpp"

#include <algorithm>
#include <cmath>

namespace snum {

LorentzParams LorentzParams::make(double p, double q)
{
    if (!(p >= 1.0) || !(q >= 1.0) || !std::isfinite(p) || !std::isfinite(q))
        throw DomainError("Lorentz parameters need finite p >= 1 and q >= 1");
    if (q > p) throw UnsupportedRegime("Lorentz norm with q > p is not supported");
    return LorentzParams{p, q};
}

ValueMeasure value_measure(const StepFunction<double>& f)
{
    ValueMeasure out;
    out.reserve(f.pieces());
    for (std::size_t i = 0; i < f.pieces(); ++i) out.emplace_back(std::fabs(f.values()[i]), f.length(i));
    return out;
}

double distribution_function(const ValueMeasure& f, double t)
{
    if (!(t >= 0.0)) throw DomainError("distribution function needs t >= 0");
    double m = 0.0;
    for (const auto& [v, w] : f)
        if (std::fabs(v) > t) m += w;
    return m;
}

double distribution_function(const StepFunction<double>& f, double t)
{
    return distribution_function(value_measure(f), t);
}

Rational distribution_function(const StepFunction<Rational>& f, const Rational& t)
{
    if (t < 0) throw DomainError("distribution function needs t >= 0");
    Rational m = 0;
    for (std::size_t i = 0; i < f.pieces(); ++i)
        if (abs(f.values()[i]) > t) m += f.length(i);
    return m;
}

double lorentz_norm(const ValueMeasure& f, const LorentzParams& params)
{
    LorentzParams::make(params.p, params.q);
    ValueMeasure vm;
    vm.reserve(f.size());
    for (const auto& [v, w] : f)
        if (v != 0.0 && w > 0.0) vm.emplace_back(std::fabs(v), w);
    if (vm.empty()) return 0.0;
    std::sort(vm.begin(), vm.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    // mu(s) = M_i on [v_{i+1}, v_i), v_1 > v_2 > ... > v_m > v_{m+1} = 0.
    const double p = params.p;
    const double q = params.q;
    double sum = 0.0;
    double cumulative = 0.0;
    std::size_t i = 0;
    while (i < vm.size()) {
        const double v = vm[i].first;
        while (i < vm.size() && vm[i].first == v) cumulative += vm[i++].second;
        const double next = i < vm.size() ? vm[i].first : 0.0;
        sum += std::pow(cumulative, q / p) * (std::pow(v, q) - std::pow(next, q));
    }
    return std::pow(p / q * sum, 1.0 / q);
}

double lorentz_norm(const StepFunction<double>& f, const LorentzParams& params)
{
    return lorentz_norm(value_measure(f), params);
}

double indicator_lorentz_norm(double measure, const LorentzParams& params)
{
    LorentzParams::make(params.p, params.q);
    if (measure < 0.0) throw DomainError("negative measure");
    return std::pow(params.p / params.q, 1.0 / params.q) * std::pow(measure, 1.0 / params.p);
}

std::optional<Rational> unit_indicator_norm_exact(const LorentzParams& params)
{
    LorentzParams::make(params.p, params.q);
    if (params.q == 1.0 && params.p == std::floor(params.p)) return Rational(static_cast<long>(params.p));
    if (params.q == params.p) return Rational(1);
    return std::nullopt;
}

}  // namespace snum
