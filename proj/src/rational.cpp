#include "symdyn/rational.hpp"

#include "symdyn/errors.hpp"

#include <charconv>
#include <cstdlib>

namespace symdyn {

Rational power(int base, int exponent) {
  if (base == 0) throw DomainError("power: zero base");
  BigInt magnitude = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(std::abs(exponent)));
  if (exponent >= 0) return Rational(magnitude);
  return Rational(BigInt(1), magnitude);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw DomainError("parse_rational: empty component in '" + std::string(text) + "'");
    std::string_view digits = part.front() == '-' ? part.substr(1) : part;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
      throw DomainError("parse_rational: not a rational '" + std::string(text) + "'");
    }
    return BigInt(std::string(part));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("parse_rational: zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

long long floor_to_int(const Rational& value) {
  BigInt q = numerator(value) / denominator(value);
  // cpp_int division truncates toward zero
  if (value < 0 && Rational(q) != value) q -= 1;
  return q.convert_to<long long>();
}

}  // namespace symdyn
