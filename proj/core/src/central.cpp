#include "lrc/central.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "lrc/sieve.hpp"

namespace lrc {

namespace {

std::vector<std::int64_t> odd_primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> out;
  if (limit < 3) return out;
  std::vector<char> composite(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t p = 2; p * p <= limit; ++p)
    if (!composite[p])
      for (std::int64_t q = p * p; q <= limit; q += p) composite[q] = 1;
  for (std::int64_t p = 3; p <= limit; p += 2)
    if (!composite[p]) out.push_back(p);
  return out;
}

std::int64_t count_multiples(const std::vector<std::int64_t>& values, std::int64_t p) {
  return static_cast<std::int64_t>(
      std::count_if(values.begin(), values.end(), [p](std::int64_t v) { return v % p == 0; }));
}

std::vector<std::int64_t> keep_multiples(const std::vector<std::int64_t>& values,
                                         std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t v : values)
    if (v % p == 0) out.push_back(v);
  return out;
}

std::vector<std::int64_t> drop_multiples(const std::vector<std::int64_t>& values,
                                         std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t v : values)
    if (v % p != 0) out.push_back(v);
  return out;
}

}  // namespace

SubsetPair SubsetPair::from_values(const ArithProg& I, const ArithProg& J,
                                   const std::vector<std::int64_t>& S,
                                   const std::vector<std::int64_t>& T,
                                   std::int64_t ambient_n) {
  if (I.length != J.length) throw std::invalid_argument("SubsetPair: |I| != |J|");
  if (ambient_n > 0 && (!I.empty() && I.back() > ambient_n))
    throw std::invalid_argument("SubsetPair: I exceeds ambient range");
  if (ambient_n > 0 && (!J.empty() && J.back() > ambient_n))
    throw std::invalid_argument("SubsetPair: J exceeds ambient range");
  SubsetPair pair;
  pair.I = I;
  pair.J = J;
  pair.ambient_n = ambient_n;
  pair.in_S.assign(static_cast<std::size_t>(I.length), 0);
  pair.in_T.assign(static_cast<std::size_t>(J.length), 0);
  for (std::int64_t v : S) {
    if (!I.contains(v)) throw std::invalid_argument("SubsetPair: S not a subset of I");
    pair.in_S[static_cast<std::size_t>((v - I.start) / I.step)] = 1;
  }
  for (std::int64_t v : T) {
    if (!J.contains(v)) throw std::invalid_argument("SubsetPair: T not a subset of J");
    pair.in_T[static_cast<std::size_t>((v - J.start) / J.step)] = 1;
  }
  return pair;
}

std::vector<std::int64_t> SubsetPair::s_values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < I.length; ++i)
    if (in_S[static_cast<std::size_t>(i)]) out.push_back(I[i]);
  return out;
}

std::vector<std::int64_t> SubsetPair::t_values() const {
  std::vector<std::int64_t> out;
  for (std::int64_t j = 0; j < J.length; ++j)
    if (in_T[static_cast<std::size_t>(j)]) out.push_back(J[j]);
  return out;
}

std::int64_t SubsetPair::s_size() const {
  return static_cast<std::int64_t>(std::count(in_S.begin(), in_S.end(), 1));
}

std::int64_t SubsetPair::t_size() const {
  return static_cast<std::int64_t>(std::count(in_T.begin(), in_T.end(), 1));
}

std::optional<std::pair<std::int64_t, std::int64_t>> find_two_coprime_pair(
    const std::vector<std::int64_t>& S, const std::vector<std::int64_t>& T) {
  std::vector<std::int64_t> s_sorted = S, t_sorted = T;
  std::sort(s_sorted.begin(), s_sorted.end());
  std::sort(t_sorted.begin(), t_sorted.end());
  for (std::int64_t s : s_sorted)
    for (std::int64_t t : t_sorted)
      if (is_two_coprime(s, t)) return std::make_pair(s, t);
  return std::nullopt;
}

FourOutcome classify_outcome(const SubsetPair& pair) {
  if (pair.s_size() + pair.t_size() < pair.I.length)
    throw std::invalid_argument("classify_outcome: need |S| + |T| >= |I|");
  FourOutcome out;
  if (pair.s_size() == 0) {
    out.tag = OutcomeTag::SEmpty;
    return out;
  }
  if (pair.t_size() == 0) {
    out.tag = OutcomeTag::TEmpty;
    return out;
  }
  bool s_is_even_half = true, t_is_even_half = true;
  for (std::int64_t i = 0; i < pair.I.length; ++i)
    if (bool(pair.in_S[static_cast<std::size_t>(i)]) != (pair.I[i] % 2 == 0)) {
      s_is_even_half = false;
      break;
    }
  for (std::int64_t j = 0; j < pair.J.length; ++j)
    if (bool(pair.in_T[static_cast<std::size_t>(j)]) != (pair.J[j] % 2 == 0)) {
      t_is_even_half = false;
      break;
    }
  if (s_is_even_half && t_is_even_half) {
    out.tag = OutcomeTag::BothEvenHalves;
    return out;
  }
  for (std::int64_t s : pair.s_values())
    for (std::int64_t t : pair.t_values())
      if (std::gcd(s, t) == 1) {
        out.tag = OutcomeTag::CoprimePair;
        out.s = s;
        out.t = t;
        return out;
      }
  out.tag = OutcomeTag::Violation;
  return out;
}

std::vector<CentralViolation> exhaustive_central_scan(std::int64_t n, std::int64_t m) {
  if (m < 1 || 2 * m > n)
    throw std::invalid_argument("exhaustive_central_scan: need 1 <= 2m <= n");
  if (m > 7)
    throw std::invalid_argument("exhaustive_central_scan: m > 7 exceeds the default budget");
  const std::int64_t len = 2 * m;
  std::vector<CentralViolation> out;
  for (std::int64_t i_start = 1; i_start + len - 1 <= n; ++i_start) {
    for (std::int64_t j_start = 1; j_start + len - 1 <= n; ++j_start) {
      if (std::abs(i_start - j_start) < len) continue;  // disjoint intervals only
      // coprime adjacency bitmasks: row s -> subset of J coprime to I[s]
      std::vector<std::uint32_t> coprime_to(static_cast<std::size_t>(len), 0);
      std::uint32_t even_i = 0, even_j = 0;
      for (std::int64_t a = 0; a < len; ++a) {
        if ((i_start + a) % 2 == 0) even_i |= std::uint32_t(1) << a;
        if ((j_start + a) % 2 == 0) even_j |= std::uint32_t(1) << a;
        for (std::int64_t b = 0; b < len; ++b)
          if (std::gcd(i_start + a, j_start + b) == 1)
            coprime_to[static_cast<std::size_t>(a)] |= std::uint32_t(1) << b;
      }
      const std::uint32_t full = (std::uint32_t(1) << len) - 1;
      for (std::uint32_t s_bits = 1; s_bits <= full; ++s_bits) {
        std::uint32_t neighborhood = 0;
        for (std::uint32_t rest = s_bits; rest;) {
          const int a = std::countr_zero(rest);
          rest &= rest - 1;
          neighborhood |= coprime_to[static_cast<std::size_t>(a)];
        }
        const std::uint32_t t_max = full & ~neighborhood;
        if (t_max == 0) continue;
        if (std::popcount(s_bits) + std::popcount(t_max) < len) continue;
        if (s_bits == even_i && t_max == even_j) continue;
        CentralViolation v;
        v.i_start = i_start;
        v.j_start = j_start;
        for (int a = 0; a < len; ++a) {
          if (s_bits & (std::uint32_t(1) << a)) v.S.push_back(i_start + a);
          if (t_max & (std::uint32_t(1) << a)) v.T.push_back(j_start + a);
        }
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

Rational lambda_sum(const SubsetPair& pair, LambdaVariant variant, std::int64_t zoom_prime) {
  std::vector<std::int64_t> S = pair.s_values();
  std::vector<std::int64_t> T = pair.t_values();
  if (S.empty() || T.empty()) throw std::invalid_argument("lambda_sum: empty S or T");
  if (variant == LambdaVariant::ZoomFixed) {
    if (zoom_prime < 3 || zoom_prime % 2 == 0)
      throw std::invalid_argument("lambda_sum: zoom prime must be odd and >= 3");
    S = keep_multiples(S, zoom_prime);
    T = drop_multiples(T, zoom_prime);
    if (S.empty() || T.empty())
      throw std::invalid_argument("lambda_sum: zoomed S or T is empty");
  }
  std::int64_t max_elem = 0;
  for (std::int64_t v : S) max_elem = std::max(max_elem, v);
  for (std::int64_t v : T) max_elem = std::max(max_elem, v);
  BigInt numerator = 0;
  for (std::int64_t p : odd_primes_up_to(max_elem))
    numerator += BigInt(count_multiples(S, p)) * count_multiples(T, p);
  return Rational(numerator) /
         Rational(BigInt(S.size()) * BigInt(T.size()));
}

ZoomCertificate zoom_in(const SubsetPair& pair, const Rational& M) {
  if (pair.s_size() == 0) throw std::invalid_argument("zoom_in: S must be nonempty");
  if (M < 3) throw std::invalid_argument("zoom_in: M must be >= 3");

  ZoomCertificate cert;
  cert.M = M;
  const std::int64_t m = pair.I.length;
  const std::int64_t s0 = pair.s_size();
  cert.r = Rational(m, s0);
  cert.alpha = Rational(s0, m);

  std::vector<std::int64_t> I = pair.I.values();
  std::vector<std::int64_t> J = pair.J.values();
  std::vector<std::int64_t> S = pair.s_values();
  std::vector<std::int64_t> T = pair.t_values();

  std::int64_t max_elem = I.empty() ? 0 : I.back();
  const BigInt m_floor = rational_num(M) / rational_den(M);
  std::int64_t prime_limit = max_elem;
  if (m_floor < prime_limit) prime_limit = static_cast<std::int64_t>(m_floor);
  const auto primes = odd_primes_up_to(prime_limit);

  for (std::int64_t p : primes) cert.alpha_p[p] = Rational(count_multiples(S, p), m);

  std::vector<std::int64_t> used;
  for (;;) {
    std::int64_t chosen = 0;
    for (std::int64_t p : primes) {
      if (std::find(used.begin(), used.end(), p) != used.end()) continue;
      const std::int64_t ip = count_multiples(I, p);
      if (ip == 0) continue;
      const std::int64_t sp = count_multiples(S, p);
      // density doubling: sp/ip >= 2 * |S|/|I|
      if (BigInt(sp) * I.size() >= BigInt(2) * S.size() * ip) {
        chosen = p;
        break;
      }
    }
    if (chosen == 0) break;
    used.push_back(chosen);
    S = keep_multiples(S, chosen);
    I = keep_multiples(I, chosen);
    T = drop_multiples(T, chosen);
    J = drop_multiples(J, chosen);
    cert.chain.push_back({chosen, S, T, I, J});
    cert.Gamma *= chosen;
  }
  cert.k = static_cast<std::int64_t>(cert.chain.size());

  Rational phi(m);
  for (std::int64_t p : used) phi *= Rational(p - 1, p);
  cert.Phi = phi;
  cert.m_gamma_ok = M * Rational(cert.Gamma) <= Rational(m, 5);

  // re-verify the doubling condition along the recorded chain
  {
    std::vector<std::int64_t> pi = pair.I.values();
    std::vector<std::int64_t> ps = pair.s_values();
    for (const auto& step : cert.chain) {
      const std::int64_t ip = count_multiples(pi, step.p);
      const std::int64_t sp = count_multiples(ps, step.p);
      if (!(BigInt(sp) * pi.size() >= BigInt(2) * ps.size() * ip))
        cert.density_doubling_ok = false;
      pi = keep_multiples(pi, step.p);
      ps = keep_multiples(ps, step.p);
    }
  }
  // termination: no remaining prime <= M qualifies against the final sets
  for (std::int64_t p : primes) {
    if (std::find(used.begin(), used.end(), p) != used.end()) continue;
    const std::int64_t ip = count_multiples(I, p);
    if (ip == 0) continue;
    const std::int64_t sp = count_multiples(S, p);
    if (BigInt(sp) * I.size() >= BigInt(2) * S.size() * ip) cert.termination_ok = false;
  }

  if (!S.empty() && !T.empty()) {
    // lambda over the final explicit sets
    BigInt numerator = 0;
    std::int64_t max2 = 0;
    for (std::int64_t v : S) max2 = std::max(max2, v);
    for (std::int64_t v : T) max2 = std::max(max2, v);
    for (std::int64_t p : odd_primes_up_to(max2))
      numerator += BigInt(count_multiples(S, p)) * count_multiples(T, p);
    cert.lambda_total = Rational(numerator) / Rational(BigInt(S.size()) * BigInt(T.size()));
  } else {
    cert.lambda_total = 0;
  }
  return cert;
}

}  // namespace lrc
