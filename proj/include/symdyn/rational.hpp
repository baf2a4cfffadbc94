#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace symdyn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exponent for any integer exponent; base must be nonzero.
Rational power(int base, int exponent);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// Accepts "p", "p/q" and "-p/q".
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// floor(value) as a signed 64-bit integer; value must fit.
long long floor_to_int(const Rational& value);

}  // namespace symdyn
