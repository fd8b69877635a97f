#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ringprob {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline std::string to_string(const BigInt& value) { return value.str(); }

/// "a/b" in lowest terms; integers print without a denominator only when b == 1
/// and `always_fraction` is false.
std::string to_string(const Rational& value, bool always_fraction = true);

/// Decimal rendering with `digits` significant digits. Display only.
std::string to_decimal(const Rational& value, int digits = 12);

}  // namespace ringprob
