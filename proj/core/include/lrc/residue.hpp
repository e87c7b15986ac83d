#pragma once

#include <cstdint>
#include <vector>

#include "lrc/arith_prog.hpp"
#include "lrc/sieve.hpp"

namespace lrc {

// Exact |A  (R + P Z)| by closed-form per-residue counting.
// Requires gcd(P, A.step) == 1.
std::int64_t count_residue_hits(const ArithProg& A, std::int64_t P,
                                const std::vector<std::int64_t>& R);

// Exact number of elements of J that are 2-coprime with x, by
// inclusion-exclusion over the odd prime divisors of x.
std::int64_t count_two_coprime_in_ap(const ArithProg& J, std::int64_t x,
                                     const PrimeSieve& sieve);

}  // namespace lrc
