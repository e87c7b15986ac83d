#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace lrc {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(num, den);
}

inline BigInt rational_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rational_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Decimal rendering with round-half-up, matching how printed tables round.
std::string round_decimal(const Rational& r, int digits);

}  // namespace lrc
