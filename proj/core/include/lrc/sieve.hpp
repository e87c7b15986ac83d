#pragma once

#include <cstdint>
#include <vector>

#include "lrc/rational.hpp"

namespace lrc {

// Smallest-prime-factor table for every 2 <= x <= limit.
// Immutable after construction; safe to share across threads.
class PrimeSieve {
 public:
  explicit PrimeSieve(std::int64_t limit);

  std::int64_t limit() const { return limit_; }

  // smallest prime factor; spf(x) == x iff x is prime
  std::int64_t spf(std::int64_t x) const;
  bool is_prime(std::int64_t x) const { return x >= 2 && spf(x) == x; }

  // ascending distinct prime factors of x (x >= 1)
  std::vector<std::int64_t> factor(std::int64_t x) const;

  // ascending odd primes <= limit
  std::vector<std::int64_t> odd_primes() const;

 private:
  std::int64_t limit_;
  std::vector<std::uint32_t> spf_;
};

PrimeSieve build_sieve(std::int64_t limit);

// x, its odd prime divisors, and omega(x) counted over all primes.
struct OddPrimeSet {
  std::int64_t value = 1;
  std::vector<std::int64_t> primes;  // ascending, odd
  int omega_all = 0;                 // distinct prime divisors including 2
};

OddPrimeSet factor_odd_primes(std::int64_t x, const PrimeSieve& sieve);

// gamma(x) = prod over odd primes p | x of (p-1)/p; density of integers
// 2-coprime with x. gamma(1) = 1.
Rational gamma_density(std::int64_t x, const PrimeSieve& sieve);

// true iff gcd(s,t) is a power of two (no common odd prime factor)
bool is_two_coprime(std::int64_t s, std::int64_t t);

// q with 0 < q < modulus and a*q == 1 (mod modulus); throws std::domain_error
// when gcd(a, modulus) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t modulus);

// Longest run of consecutive integers in [1, scan_limit] with none coprime
// to x.
std::int64_t max_noncoprime_run(std::int64_t x, std::int64_t scan_limit);

struct TableRow {
  int a = 0;
  std::int64_t modulus = 0;  // w_a or q_a
  Rational gamma;
  Rational value;  // chi_a or kappa_a
};

// chi_a = (2^a - 3/2)/(gamma(w_a) - 1/2) * 6 + 2 with w_a = q_{a+1}/3,
// valid for 1 <= a <= 6.
TableRow chi_table(int a, const PrimeSieve& sieve);

// kappa_a = (2^a - 4/3)/(gamma(q_a) - 1/3) * 6 + 2 with q_a the product of
// the first a odd primes, valid for 1 <= a <= 7.
TableRow kappa_table(int a, const PrimeSieve& sieve);

}  // namespace lrc
