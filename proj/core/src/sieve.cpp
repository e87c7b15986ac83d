#include "lrc/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lrc {

PrimeSieve::PrimeSieve(std::int64_t limit) : limit_(limit) {
  if (limit < 2) throw std::invalid_argument("build_sieve: limit must be >= 2");
  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::int64_t x = 2; x <= limit; ++x) {
    if (spf_[x] == 0) {
      spf_[x] = static_cast<std::uint32_t>(x);
      primes.push_back(static_cast<std::uint32_t>(x));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[x] || p * static_cast<std::int64_t>(x) > limit) break;
      spf_[p * x] = p;
    }
  }
}

std::int64_t PrimeSieve::spf(std::int64_t x) const {
  if (x < 2 || x > limit_) throw std::out_of_range("PrimeSieve::spf: x out of range");
  return spf_[static_cast<std::size_t>(x)];
}

std::vector<std::int64_t> PrimeSieve::factor(std::int64_t x) const {
  if (x < 1 || x > limit_) throw std::out_of_range("PrimeSieve::factor: x out of range");
  std::vector<std::int64_t> out;
  while (x > 1) {
    std::int64_t p = spf_[static_cast<std::size_t>(x)];
    out.push_back(p);
    while (x % p == 0) x /= p;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> PrimeSieve::odd_primes() const {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 3; x <= limit_; x += 2)
    if (spf_[static_cast<std::size_t>(x)] == x) out.push_back(x);
  return out;
}

PrimeSieve build_sieve(std::int64_t limit) { return PrimeSieve(limit); }

OddPrimeSet factor_odd_primes(std::int64_t x, const PrimeSieve& sieve) {
  if (x < 1) throw std::invalid_argument("factor_odd_primes: x must be positive");
  if (x > sieve.limit()) throw std::out_of_range("factor_odd_primes: x exceeds sieve limit");
  OddPrimeSet out;
  out.value = x;
  auto all = sieve.factor(x);
  out.omega_all = static_cast<int>(all.size());
  for (std::int64_t p : all)
    if (p != 2) out.primes.push_back(p);
  return out;
}

Rational gamma_density(std::int64_t x, const PrimeSieve& sieve) {
  Rational g = 1;
  for (std::int64_t p : factor_odd_primes(x, sieve).primes) g *= Rational(p - 1, p);
  return g;
}

bool is_two_coprime(std::int64_t s, std::int64_t t) {
  if (s < 1 || t < 1) throw std::invalid_argument("is_two_coprime: arguments must be positive");
  while (s % 2 == 0) s /= 2;
  while (t % 2 == 0) t /= 2;
  return std::gcd(s, t) == 1;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  std::int64_t r0 = modulus, r1 = ((a % modulus) + modulus) % modulus;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: argument not invertible");
  return ((s0 % modulus) + modulus) % modulus;
}

std::int64_t max_noncoprime_run(std::int64_t x, std::int64_t scan_limit) {
  if (x < 2) throw std::invalid_argument("max_noncoprime_run: x must be >= 2");
  std::int64_t best = 0, run = 0;
  for (std::int64_t y = 1; y <= scan_limit; ++y) {
    if (std::gcd(y, x) > 1) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return best;
}

namespace {

// gamma over an explicit odd-prime list (moduli may exceed the sieve limit)
Rational gamma_of_primes(const std::vector<std::int64_t>& primes) {
  Rational g = 1;
  for (std::int64_t p : primes) g *= Rational(p - 1, p);
  return g;
}

std::vector<std::int64_t> first_odd_primes(int count, const PrimeSieve& sieve) {
  auto odd = sieve.odd_primes();
  if (static_cast<int>(odd.size()) < count)
    throw std::invalid_argument("table: sieve limit too small for requested row");
  odd.resize(static_cast<std::size_t>(count));
  return odd;
}

}  // namespace

TableRow chi_table(int a, const PrimeSieve& sieve) {
  if (a < 1 || a > 6) throw std::domain_error("chi_table: a must be in [1,6]");
  // w_a = product of the odd primes p_2 .. p_{a+1} (5, 7, 11, ...)
  auto primes = first_odd_primes(a + 1, sieve);
  primes.erase(primes.begin());
  TableRow row;
  row.a = a;
  row.modulus = 1;
  for (std::int64_t p : primes) row.modulus *= p;
  row.gamma = gamma_of_primes(primes);
  Rational half(1, 2);
  if (row.gamma <= half) throw std::domain_error("chi_table: gamma(w_a) <= 1/2");
  row.value = (Rational(std::int64_t(1) << a) - Rational(3, 2)) / (row.gamma - half) * 6 + 2;
  return row;
}

TableRow kappa_table(int a, const PrimeSieve& sieve) {
  if (a < 1 || a > 7) throw std::domain_error("kappa_table: a must be in [1,7]");
  auto primes = first_odd_primes(a, sieve);
  TableRow row;
  row.a = a;
  row.modulus = 1;
  for (std::int64_t p : primes) row.modulus *= p;
  row.gamma = gamma_of_primes(primes);
  Rational third(1, 3);
  if (row.gamma <= third) throw std::domain_error("kappa_table: gamma(q_a) <= 1/3");
  row.value = (Rational(std::int64_t(1) << a) - Rational(4, 3)) / (row.gamma - third) * 6 + 2;
  return row;
}

}  // namespace lrc
