#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lrc/arith_prog.hpp"
#include "lrc/rational.hpp"

namespace lrc {

// Subsets S of I and T of J, tracked positionally.
struct SubsetPair {
  ArithProg I;
  ArithProg J;
  std::vector<char> in_S;  // indexed by position in I
  std::vector<char> in_T;  // indexed by position in J
  std::int64_t ambient_n = 0;

  static SubsetPair from_values(const ArithProg& I, const ArithProg& J,
                                const std::vector<std::int64_t>& S,
                                const std::vector<std::int64_t>& T,
                                std::int64_t ambient_n);

  std::vector<std::int64_t> s_values() const;
  std::vector<std::int64_t> t_values() const;
  std::int64_t s_size() const;
  std::int64_t t_size() const;
};

enum class OutcomeTag { SEmpty, TEmpty, BothEvenHalves, CoprimePair, Violation };

struct FourOutcome {
  OutcomeTag tag = OutcomeTag::Violation;
  std::int64_t s = 0;  // CoprimePair only
  std::int64_t t = 0;
};

// First 2-coprime pair in lexicographic (s, t) order, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> find_two_coprime_pair(
    const std::vector<std::int64_t>& S, const std::vector<std::int64_t>& T);

// Tests the four outcomes in order; Violation when none applies.
// Requires |S| + |T| >= |I|.
FourOutcome classify_outcome(const SubsetPair& pair);

struct CentralViolation {
  std::int64_t i_start = 0;
  std::int64_t j_start = 0;
  std::vector<std::int64_t> S;
  std::vector<std::int64_t> T;  // maximal bad T = J minus coprime neighborhood of S
};

// For every ordered pair of disjoint length-2m intervals I, J in [n] and
// every nonempty S, reports (S, Tmax) whenever Tmax = {t in J : no s in S
// coprime to t} is nonempty, |S| + |Tmax| >= 2m, and (S, Tmax) is not the
// even-halves outcome. Sorted by (i_start, j_start, S bits).
std::vector<CentralViolation> exhaustive_central_scan(std::int64_t n, std::int64_t m);

enum class LambdaVariant { Base, ZoomFixed };

// Sum over odd primes p of the product of multiple-densities of S and T.
// Base uses (S, T); ZoomFixed(p) uses (S cap pZ, T minus pZ).
Rational lambda_sum(const SubsetPair& pair, LambdaVariant variant,
                    std::int64_t zoom_prime = 0);

struct ZoomStep {
  std::int64_t p = 0;
  std::vector<std::int64_t> S, T, I, J;
};

struct ZoomCertificate {
  std::vector<ZoomStep> chain;
  std::int64_t k = 0;
  std::int64_t Gamma = 1;  // product of chain primes
  Rational Phi;            // m * prod(p_i - 1) / Gamma
  Rational M;              // prime threshold used
  Rational r;              // m / |S|
  Rational alpha;          // |S| / m
  std::map<std::int64_t, Rational> alpha_p;
  Rational lambda_total;   // base lambda sum over the final (S_k, T_k)
  bool density_doubling_ok = true;  // |S_i|/|I_i| >= 2 |S_{i-1}|/|I_{i-1}|
  bool termination_ok = true;       // no remaining prime <= M still qualifies
  bool m_gamma_ok = true;           // M * Gamma <= m / 5
};

// Greedy refinement chain: repeatedly restricts to the smallest odd prime
// p <= M (unused so far) whose multiple-density in S at least doubles the
// ambient density.
ZoomCertificate zoom_in(const SubsetPair& pair, const Rational& M);

}  // namespace lrc
