#include "snum/step_function.hpp"

#include "snum/error.hpp"

#include <algorithm>
#include <sstream>

namespace snum {

std::string to_string(ArithmeticMode mode)
{
    return mode == ArithmeticMode::exact ? "exact" : "float";
}

ArithmeticMode parse_mode(std::string_view text)
{
    if (text == "exact") return ArithmeticMode::exact;
    if (text == "float" || text == "floating") return ArithmeticMode::floating;
    throw DomainError("unknown arithmetic mode: " + std::string(text));
}

std::string to_string(const Rational& x)
{
    return x.get_str();
}

Rational parse_rational(std::string_view text)
{
    Rational r;
    if (r.set_str(std::string(text), 10) != 0) throw DomainError("not a rational: " + std::string(text));
    r.canonicalize();
    return r;
}

std::size_t denominator_bits(const Rational& x)
{
    return mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

namespace {

template <class T>
void validate(const std::vector<T>& b, const std::vector<T>& v)
{
    if (b.size() < 2) throw DomainError("step function needs at least two breakpoints");
    if (v.size() + 1 != b.size()) throw DomainError("piece count must equal breakpoint count - 1");
    if (b.front() != T(0) || b.back() != T(1)) throw DomainError("breakpoints must start at 0 and end at 1");
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (!(b[i] < b[i + 1])) throw DomainError("breakpoints must be strictly increasing");
}

template <class T>
StepFunction<T> combine(const StepFunction<T>& a, const StepFunction<T>& b, int op)
{
    std::vector<T> ref = common_refinement<T>({&a, &b});
    std::vector<T> va = values_on(a, ref);
    std::vector<T> vb = values_on(b, ref);
    for (std::size_t i = 0; i < va.size(); ++i) {
        if (op == 0) va[i] += vb[i];
        else if (op == 1) va[i] -= vb[i];
        else va[i] *= vb[i];
    }
    return StepFunction<T>(std::move(ref), std::move(va)).canonical();
}

}  // namespace

template <class T>
StepFunction<T>::StepFunction() : breakpoints_{T(0), T(1)}, values_{T(0)} {}

template <class T>
StepFunction<T>::StepFunction(std::vector<T> breakpoints, std::vector<T> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values))
{
    validate(breakpoints_, values_);
}

template <class T>
StepFunction<T> StepFunction<T>::uniform(const std::vector<T>& values)
{
    if (values.empty()) throw DomainError("uniform step function needs at least one cell");
    const std::size_t n = values.size();
    std::vector<T> b(n + 1);
    for (std::size_t i = 0; i <= n; ++i) b[i] = T(static_cast<long>(i)) / T(static_cast<long>(n));
    b[n] = T(1);
    return StepFunction(std::move(b), values);
}

template <class T>
StepFunction<T> StepFunction<T>::indicator(const T& a, const T& b, const T& height)
{
    if (!(T(0) <= a && a < b && b <= T(1))) throw DomainError("indicator needs 0 <= a < b <= 1");
    std::vector<T> bp{T(0)};
    std::vector<T> v;
    if (a > T(0)) {
        bp.push_back(a);
        v.push_back(T(0));
    }
    v.push_back(height);
    bp.push_back(b);
    if (b < T(1)) {
        bp.push_back(T(1));
        v.push_back(T(0));
    }
    return StepFunction(std::move(bp), std::move(v));
}

template <class T>
T StepFunction<T>::operator()(const T& x) const
{
    if (x < T(0) || x > T(1)) throw DomainError("evaluation point outside [0,1]");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t piece = static_cast<std::size_t>(it - breakpoints_.begin());
    piece = piece == 0 ? 0 : piece - 1;
    return values_[std::min(piece, values_.size() - 1)];
}

template <class T>
T StepFunction<T>::integral() const
{
    T s(0);
    for (std::size_t i = 0; i < values_.size(); ++i) s += values_[i] * length(i);
    return s;
}

template <class T>
T StepFunction<T>::l1_norm() const
{
    T s(0);
    for (std::size_t i = 0; i < values_.size(); ++i) s += abs_value(values_[i]) * length(i);
    return s;
}

template <class T>
T StepFunction<T>::integral_to(const T& x) const
{
    if (x < T(0) || x > T(1)) throw DomainError("integration limit outside [0,1]");
    T s(0);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (breakpoints_[i] >= x) break;
        const T right = breakpoints_[i + 1] < x ? breakpoints_[i + 1] : x;
        s += values_[i] * (right - breakpoints_[i]);
    }
    return s;
}

template <class T>
StepFunction<T> StepFunction<T>::canonical() const
{
    std::vector<T> b{breakpoints_.front()};
    std::vector<T> v{values_.front()};
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] == v.back()) continue;
        b.push_back(breakpoints_[i]);
        v.push_back(values_[i]);
    }
    b.push_back(breakpoints_.back());
    return StepFunction(std::move(b), std::move(v));
}

template <class T>
StepFunction<T> StepFunction<T>::operator-() const
{
    StepFunction r = *this;
    for (auto& v : r.values_) v = -v;
    return r;
}

template <class T>
StepFunction<T>& StepFunction<T>::operator+=(const StepFunction& other)
{
    *this = combine(*this, other, 0);
    return *this;
}

template <class T>
StepFunction<T>& StepFunction<T>::operator-=(const StepFunction& other)
{
    *this = combine(*this, other, 1);
    return *this;
}

template <class T>
StepFunction<T>& StepFunction<T>::operator*=(const T& c)
{
    for (auto& v : values_) v *= c;
    return *this;
}

template <class T>
bool StepFunction<T>::operator==(const StepFunction& other) const
{
    const StepFunction a = canonical();
    const StepFunction b = other.canonical();
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
}

template <class T>
StepFunction<T> StepFunction<T>::product(const StepFunction& other) const
{
    return combine(*this, other, 2);
}

template <class T>
std::vector<T> common_refinement(const std::vector<const StepFunction<T>*>& fs)
{
    std::vector<T> all;
    for (const auto* f : fs) all.insert(all.end(), f->breakpoints().begin(), f->breakpoints().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    if (all.size() < 2) return {T(0), T(1)};
    return all;
}

template <class T>
std::vector<T> values_on(const StepFunction<T>& f, const std::vector<T>& refinement)
{
    std::vector<T> out;
    out.reserve(refinement.size() - 1);
    std::size_t piece = 0;
    const auto& b = f.breakpoints();
    for (std::size_t i = 0; i + 1 < refinement.size(); ++i) {
        while (piece + 1 < f.pieces() && b[piece + 1] <= refinement[i]) ++piece;
        out.push_back(f.values()[piece]);
    }
    return out;
}

StepFunction<double> to_double(const StepFunction<Rational>& f)
{
    std::vector<double> b, v;
    for (const auto& x : f.breakpoints()) b.push_back(x.get_d());
    for (const auto& x : f.values()) v.push_back(x.get_d());
    return StepFunction<double>(std::move(b), std::move(v));
}

StepFunction<Rational> to_exact(const StepFunction<double>& f)
{
    std::vector<Rational> b, v;
    for (double x : f.breakpoints()) b.emplace_back(x);
    for (double x : f.values()) v.emplace_back(x);
    return StepFunction<Rational>(std::move(b), std::move(v));
}

bool MeanZeroTag::accepts(const StepFunction<double>& f) const
{
    return std::fabs(f.integral()) <= tolerance;
}

bool MeanZeroTag::accepts(const StepFunction<Rational>& f) const
{
    return f.integral() == 0;
}

template class StepFunction<double>;
template class StepFunction<Rational>;
template std::vector<double> common_refinement(const std::vector<const StepFunction<double>*>&);
template std::vector<Rational> common_refinement(const std::vector<const StepFunction<Rational>*>&);
template std::vector<double> values_on(const StepFunction<double>&, const std::vector<double>&);
template std::vector<Rational> values_on(const StepFunction<Rational>&, const std::vector<Rational>&);

}  // namespace snum
