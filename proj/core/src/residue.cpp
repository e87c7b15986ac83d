#include "lrc/residue.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lrc {

std::int64_t count_residue_hits(const ArithProg& A, std::int64_t P,
                                const std::vector<std::int64_t>& R) {
  if (P < 1) throw std::invalid_argument("count_residue_hits: P must be positive");
  if (std::gcd(P, A.step) != 1)
    throw std::invalid_argument("count_residue_hits: gcd(P, step) must be 1");
  if (A.length == 0 || R.empty()) return 0;

  std::vector<std::int64_t> residues;
  residues.reserve(R.size());
  for (std::int64_t r : R) residues.push_back(((r % P) + P) % P);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());

  if (P == 1) return A.length;  // the single residue class covers everything

  // index i hits residue r iff i == (r - start) * step^{-1} (mod P)
  std::int64_t inv = mod_inverse(A.step % P, P);
  std::int64_t count = 0;
  for (std::int64_t r : residues) {
    std::int64_t i0 = ((r - A.start) % P + P) % P;
    i0 = (i0 * inv) % P;
    if (i0 < A.length) count += (A.length - 1 - i0) / P + 1;
  }
  return count;
}

std::int64_t count_two_coprime_in_ap(const ArithProg& J, std::int64_t x,
                                     const PrimeSieve& sieve) {
  if (!J.empty() && J.back() > sieve.limit())
    throw std::out_of_range("count_two_coprime_in_ap: J exceeds sieve limit");
  const auto odd = factor_odd_primes(x, sieve).primes;
  if (J.length == 0) return 0;

  // inclusion-exclusion over subsets Q of the odd prime divisors:
  // |{j in J : prod(Q) | j}| = count_residue_hits(J, prod(Q), {0})
  std::int64_t total = 0;
  const std::size_t k = odd.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
    std::int64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t(1) << i)) {
        d *= odd[i];
        ++bits;
      }
    std::int64_t hits = count_residue_hits(J, d, {0});
    total += (bits % 2 == 0) ? hits : -hits;
  }
  return total;
}

}  // namespace lrc
