#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

namespace snum {

using Rational = mpq_class;

enum class ArithmeticMode { exact, floating };

std::string to_string(ArithmeticMode mode);
ArithmeticMode parse_mode(std::string_view text);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline double abs_value(double x) { return std::fabs(x); }
inline Rational abs_value(const Rational& x) { return abs(x); }

// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

// Number of bits in the denominator of x.
std::size_t denominator_bits(const Rational& x);

template <class T>
T from_double(double x);

template <>
inline double from_double<double>(double x) { return x; }

// Exact binary value of the double.
template <>
inline Rational from_double<Rational>(double x) { return Rational(x); }

}  // namespace snum
