#include "lrc/rational.hpp"

#include <stdexcept>

namespace lrc {

std::string round_decimal(const Rational& r, int digits) {
  if (digits < 0) throw std::invalid_argument("round_decimal: digits < 0");
  bool negative = r < 0;
  Rational a = negative ? Rational(-r) : r;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up: floor(a * scale + 1/2)
  Rational scaled = a * Rational(scale) + Rational(1, 2);
  BigInt units = rational_num(scaled) / rational_den(scaled);
  std::string s = units.str();
  if (digits == 0) return (negative && units != 0 ? "-" : "") + s;
  while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
  s.insert(s.end() - digits, '.');
  if (negative && units != 0) s.insert(s.begin(), '-');
  return s;
}

}  // namespace lrc
