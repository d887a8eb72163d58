#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace nnstat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders "num/den" in lowest terms, or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Parses "num" or "num/den" with an optional leading '-'. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational rational_from_string(std::string_view text);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt factorial(int n);

}  // namespace nnstat
