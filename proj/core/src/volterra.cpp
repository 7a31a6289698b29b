#include "snum/volterra.hpp"

#include "snum/error.hpp"

#include <algorithm>

namespace snum {

template <class T>
VolterraCurve<T>::VolterraCurve(const StepFunction<T>& f) : nodes_(f.breakpoints())
{
    values_.reserve(nodes_.size());
    values_.push_back(T(0));
    for (std::size_t i = 0; i < f.pieces(); ++i) values_.push_back(values_.back() + f.values()[i] * f.length(i));
}

template <class T>
T VolterraCurve<T>::operator()(const T& t) const
{
    if (t < T(0) || t > T(1)) throw DomainError("evaluation point outside [0,1]");
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end()) return values_.back();
    const std::size_t r = static_cast<std::size_t>(it - nodes_.begin());
    const std::size_t l = r - 1;
    const T slope = (values_[r] - values_[l]) / (nodes_[r] - nodes_[l]);
    return values_[l] + slope * (t - nodes_[l]);
}

template <class T>
T VolterraCurve<T>::max_value() const
{
    return *std::max_element(values_.begin(), values_.end());
}

template <class T>
T VolterraCurve<T>::min_value() const
{
    return *std::min_element(values_.begin(), values_.end());
}

template <class T>
T VolterraCurve<T>::sup_norm() const
{
    T m(0);
    for (const auto& v : values_) {
        const T a = abs_value(v);
        if (a > m) m = a;
    }
    return m;
}

template <class T>
T VolterraCurve<T>::argmax_abs() const
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (abs_value(values_[i]) > abs_value(values_[best])) best = i;
    return nodes_[best];
}

template <class T>
StepFunction<T> VolterraCurve<T>::slopes() const
{
    std::vector<T> v;
    v.reserve(nodes_.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        v.push_back((values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]));
    return StepFunction<T>(nodes_, std::move(v)).canonical();
}

template <class T>
bool VolterraCurve<T>::operator==(const VolterraCurve& other) const
{
    std::vector<T> all = nodes_;
    all.insert(all.end(), other.nodes_.begin(), other.nodes_.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return std::all_of(all.begin(), all.end(), [&](const T& t) { return (*this)(t) == other(t); });
}

double sup_norm(const VolterraCurve<double>& v) { return v.sup_norm(); }
Rational sup_norm(const VolterraCurve<Rational>& v) { return v.sup_norm(); }

template <class T>
StepFunction<T> mean_zero_project(const StepFunction<T>& f)
{
    const T mean = f.integral();
    std::vector<T> v = f.values();
    for (auto& x : v) x -= mean;
    return StepFunction<T>(f.breakpoints(), std::move(v)).canonical();
}

DiscreteNormResult operator_norm_discrete(std::size_t N, DensityClass cls)
{
    if (N < 2) throw DomainError("operator_norm_discrete needs N >= 2");
    const Rational n(static_cast<long>(N));
    std::vector<Rational> nodes(N + 1);
    for (std::size_t k = 0; k <= N; ++k) nodes[k] = Rational(static_cast<long>(k)) / n;
    auto node = [&](std::size_t k) -> const Rational& { return nodes[k]; };

    DiscreteNormResult best{Rational(-1), StepFunction<Rational>(), 0};
    auto consider = [&](StepFunction<Rational> f) {
        const Rational v = VolterraCurve<Rational>(f).sup_norm();
        ++best.vertices_checked;
        if (v > best.value) {
            best.value = v;
            best.witness = std::move(f);
        }
    };

    if (cls == DensityClass::nonnegative) {
        for (std::size_t a = 0; a < N; ++a) consider(StepFunction<Rational>::indicator(node(a), node(a + 1), n));
        return best;
    }
    const Rational half = n / 2;
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = 0; b < N; ++b) {
            if (a == b) continue;
            // (N/2)(e_a - e_b) as a canonical step function.
            const std::size_t lo = std::min(a, b);
            const std::size_t hi = std::max(a, b);
            const Rational first = a < b ? half : -half;
            std::vector<Rational> bp{Rational(0)};
            std::vector<Rational> vals;
            if (lo > 0) {
                bp.push_back(node(lo));
                vals.emplace_back(0);
            }
            bp.push_back(node(lo + 1));
            vals.push_back(first);
            if (hi > lo + 1) {
                bp.push_back(node(hi));
                vals.emplace_back(0);
            }
            bp.push_back(node(hi + 1));
            vals.push_back(-first);
            if (hi + 1 < N) {
                bp.push_back(Rational(1));
                vals.emplace_back(0);
            }
            consider(StepFunction<Rational>(std::move(bp), std::move(vals)));
        }
    }
    return best;
}

template class VolterraCurve<double>;
template class VolterraCurve<Rational>;
template StepFunction<double> mean_zero_project(const StepFunction<double>&);
template StepFunction<Rational> mean_zero_project(const StepFunction<Rational>&);

}  // namespace snum
