#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace fracam::algebra {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses a decimal literal such as "12", "0.25" or "1.5e-3" into an exact rational.
/// Throws std::invalid_argument on malformed text.
Rational parse_decimal(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational pow(const Rational& base, int exponent);

}  // namespace fracam::algebra
