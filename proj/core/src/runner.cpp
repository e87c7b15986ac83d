#include "lrc/runner.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "lrc/errors.hpp"
#include "lrc/sieve.hpp"

namespace lrc {

namespace {

using i128 = __int128;

struct Frac {
  i128 num = 0;
  i128 den = 1;
};

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Frac reduce(i128 num, i128 den) {
  i128 g = gcd128(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

bool frac_less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
bool frac_eq(const Frac& a, const Frac& b) { return a.num * b.den == b.num * a.den; }

BigInt to_bigint(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<std::uint64_t>(u >> 64);
  BigInt out = (hi << 64) + static_cast<std::uint64_t>(u);
  return neg ? BigInt(-out) : out;
}

Rational to_rational(const Frac& f) { return Rational(to_bigint(f.num), to_bigint(f.den)); }

// {v * p/q} as (r, q) with r = v p mod q
bool open_condition(const std::vector<std::int64_t>& speeds, const Frac& t) {
  const i128 np1 = static_cast<i128>(speeds.size()) + 1;
  for (std::int64_t v : speeds) {
    i128 r = (static_cast<i128>(v) * t.num) % t.den;
    if (r < 0) r += t.den;
    if (!(r * np1 > t.den && r * np1 < (np1 - 1) * t.den)) return false;
  }
  return true;
}

bool closed_condition(const std::vector<std::int64_t>& speeds, const Frac& t) {
  const i128 np1 = static_cast<i128>(speeds.size()) + 1;
  for (std::int64_t v : speeds) {
    i128 r = (static_cast<i128>(v) * t.num) % t.den;
    if (r < 0) r += t.den;
    if (!(r * np1 >= t.den && r * np1 <= (np1 - 1) * t.den)) return false;
  }
  return true;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SpeedSet SpeedSet::from(std::vector<std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("SpeedSet: empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1) throw std::invalid_argument("SpeedSet: speeds must be positive");
    if (i > 0 && values[i] <= values[i - 1])
      throw std::invalid_argument("SpeedSet: speeds must be strictly increasing");
  }
  SpeedSet out;
  out.speeds = std::move(values);
  return out;
}

Rational fractional_part(std::int64_t v, const Rational& t) {
  BigInt num = rational_num(t) * v;
  BigInt den = rational_den(t);
  BigInt fl = floor_div(num, den);
  return Rational(num - fl * den, den);
}

InstanceClass classify_instance(const SpeedSet& V, std::int64_t budget_sum) {
  const auto& speeds = V.speeds;
  std::int64_t total = 0;
  for (std::int64_t v : speeds) total += v;
  if (total > budget_sum)
    throw resource_limit_error("classify_instance: speed sum exceeds budget");

  const std::int64_t n = V.n();
  const i128 np1 = n + 1;

  // candidate times: wraparound points a/v plus boundary crossings
  // (a + 1/(n+1))/v and (a + n/(n+1))/v, for each speed
  std::vector<Frac> candidates;
  candidates.push_back({0, 1});
  candidates.push_back({1, 1});  // sentinel; {v*1} = 0 so never feasible itself
  for (std::int64_t v : speeds) {
    const i128 den = static_cast<i128>(v) * np1;
    for (std::int64_t a = 0; a < v; ++a) {
      const i128 base = static_cast<i128>(a) * np1;
      candidates.push_back(reduce(base, den));
      candidates.push_back(reduce(base + 1, den));
      candidates.push_back(reduce(base + n, den));
    }
  }
  std::sort(candidates.begin(), candidates.end(), frac_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end(), frac_eq),
                   candidates.end());

  InstanceClass out;
  for (std::size_t i = 0; i + 1 < candidates.size(); ++i) {
    const Frac& a = candidates[i];
    const Frac& b = candidates[i + 1];
    const Frac mid = reduce(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
    if (open_condition(speeds, mid)) {
      out.tag = InstanceTag::Loose;
      out.witness = to_rational(mid);
      return out;
    }
  }
  for (const Frac& c : candidates) {
    if (c.num == c.den) continue;  // sentinel t = 1
    if (closed_condition(speeds, c)) out.witness_points.push_back(to_rational(c));
  }
  out.tag = out.witness_points.empty() ? InstanceTag::Counterexample : InstanceTag::Tight;
  return out;
}

std::optional<std::int64_t> largest_missing(const SpeedSet& V) {
  const std::int64_t n = V.n();
  for (std::int64_t x = n; x >= 1; --x)
    if (!std::binary_search(V.speeds.begin(), V.speeds.end(), x)) return x;
  return std::nullopt;
}

namespace {

bool in_open_window(const Rational& frac, std::int64_t n) {
  return frac * (n + 1) > 1 && frac * (n + 1) < n;
}

std::optional<std::vector<SpeedBound>> verified_bounds(const SpeedSet& V, const Rational& t) {
  std::vector<SpeedBound> bounds;
  bounds.reserve(V.speeds.size());
  for (std::int64_t v : V.speeds) {
    SpeedBound b;
    b.v = v;
    b.frac = fractional_part(v, t);
    if (!in_open_window(b.frac, V.n())) return std::nullopt;
    b.dist = std::min(b.frac, Rational(1) - b.frac);
    bounds.push_back(std::move(b));
  }
  return bounds;
}

}  // namespace

std::optional<WitnessCertificate> witness_from_missing(const SpeedSet& V, std::int64_t k) {
  const std::int64_t n = V.n();
  auto x = largest_missing(V);
  if (!x || *x <= n - k) return std::nullopt;
  for (std::int64_t v : V.speeds)
    if (v % *x == 0) return std::nullopt;
  WitnessCertificate cert;
  cert.from_missing = true;
  cert.x = *x;
  cert.t = Rational(1, *x);
  auto bounds = verified_bounds(V, cert.t);
  if (!bounds) return std::nullopt;
  cert.bounds = std::move(*bounds);
  return cert;
}

GroupPartition build_partition(std::int64_t n, std::int64_t x, std::int64_t script_m) {
  if (script_m < 1) throw std::invalid_argument("build_partition: script_m must be >= 1");
  const std::int64_t cap = 4 * script_m + 3;
  if (x < 1 || x > n - cap)
    throw std::invalid_argument("build_partition: need 1 <= x <= n - (4*script_m + 3)");

  GroupPartition part;
  part.n = n;
  part.x = x;
  part.script_m = script_m;

  std::int64_t cur = 1;
  while (n - cur + 1 > cap) {
    std::int64_t size = 2 * script_m + 2;
    const std::int64_t end = cur + size - 1;
    if (end == x || end == x + 1) size -= 2;  // keep x, x+1, x+2 together
    part.groups_I.emplace_back(cur, cur + size - 1);
    cur += size;
  }
  part.groups_I.emplace_back(cur, n);  // residue merged into the last group

  const std::size_t count = part.groups_I.size();
  if (count < 2) throw std::invalid_argument("build_partition: degenerate partition");
  part.r_index = count;  // sentinel
  for (std::size_t j = 0; j + 1 < count; ++j) {
    if (part.groups_I[j].first <= x && x + 2 <= part.groups_I[j].second) {
      part.r_index = j;
      break;
    }
  }
  if (part.r_index == count)
    throw std::invalid_argument("build_partition: x, x+1, x+2 not grouped");

  // J-groups in reversed order: the partner of I_ell starts at n+1
  part.groups_J.resize(count);
  std::int64_t jcur = n + 1;
  for (std::size_t idx = count - 1; idx-- > 0;) {
    const std::int64_t size = part.groups_I[idx].second - part.groups_I[idx].first + 1;
    part.groups_J[idx] = {jcur, jcur + size - 1};
    jcur += size;
  }
  part.groups_J[count - 1] = {jcur, 2 * n};
  return part;
}

ConstructResult construct_loose_witness(const SpeedSet& V,
                                        std::optional<std::int64_t> script_m) {
  ConstructResult result;
  const std::int64_t n = V.n();
  const std::int64_t vn = V.max_speed();
  if (vn <= n) {
    result.status = ConstructResult::Status::Inapplicable;
    result.reason = "v_n <= n";
    return result;
  }
  const std::int64_t k = (2 * n - vn) / 2;
  result.k = k;
  if (k < 1) {
    result.status = ConstructResult::Status::Inapplicable;
    result.reason = "v_n too close to 2n (k < 1)";
    return result;
  }

  const auto x = largest_missing(V);  // exists because v_n > n
  if (*x > n - k) {
    auto cert = witness_from_missing(V, k);
    if (cert) {
      result.status = ConstructResult::Status::Witness;
      result.certificate = std::move(cert);
      return result;
    }
    result.status = ConstructResult::Status::SearchFailed;
    result.reason = "inverse-of-missing time failed verification";
    return result;
  }

  const std::int64_t m_cap = std::min((n - *x - 3) / 4, (k - 3) / 4);
  const std::int64_t m_lo = script_m ? *script_m : 1;
  const std::int64_t m_hi = script_m ? *script_m : std::max<std::int64_t>(m_cap, 0);
  if (m_lo < 1 || m_lo > m_hi) {
    result.status = ConstructResult::Status::Inapplicable;
    result.reason = "no admissible script_m (need k >= 4*script_m + 3 and x <= n - (4*script_m + 3))";
    return result;
  }

  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    if (*x > n - (4 * m + 3) || k < 4 * m + 3) break;
    result.script_m_used = m;
    const GroupPartition part = build_partition(n, *x, m);
    const std::size_t count = part.groups_I.size();

    auto missing_in = [&](std::pair<std::int64_t, std::int64_t> g) {
      std::vector<std::int64_t> out;
      for (std::int64_t v = g.first; v <= g.second; ++v)
        if (!std::binary_search(V.speeds.begin(), V.speeds.end(), v)) out.push_back(v);
      return out;
    };

    std::vector<std::vector<std::int64_t>> S(count), T(count);
    result.diagnostics.clear();
    for (std::size_t j = 0; j < count; ++j) {
      S[j] = missing_in(part.groups_I[j]);
      T[j] = missing_in(part.groups_J[j]);
      GroupDiagnostic d;
      d.j = j;
      d.s_size = static_cast<std::int64_t>(S[j].size());
      d.t_size = static_cast<std::int64_t>(T[j].size());
      d.two_m = part.groups_I[j].second - part.groups_I[j].first + 1;
      result.diagnostics.push_back(d);
    }

    // search order: the group holding x first, then by surplus |S|+|T|-2m
    std::vector<std::size_t> order;
    order.push_back(part.r_index);
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j + 1 < count; ++j)
      if (j != part.r_index) rest.push_back(j);
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      const std::int64_t sa = result.diagnostics[a].s_size + result.diagnostics[a].t_size -
                              result.diagnostics[a].two_m;
      const std::int64_t sb = result.diagnostics[b].s_size + result.diagnostics[b].t_size -
                              result.diagnostics[b].two_m;
      return sa > sb;
    });
    order.insert(order.end(), rest.begin(), rest.end());

    for (std::size_t j : order) {
      for (std::int64_t s : S[j]) {
        for (std::int64_t t : T[j]) {
          if (std::gcd(s, t) != 1) continue;
          const std::int64_t modulus = s + t;
          if (!(modulus > 2 * n - 2 * k && modulus <= 2 * n)) continue;
          const std::int64_t q = mod_inverse(s, modulus);
          bool modular_ok = true;
          for (std::int64_t v : V.speeds) {
            const std::int64_t r = v % modulus;
            if (r == 0 || r == s || r == t) {
              modular_ok = false;
              break;
            }
          }
          if (!modular_ok) continue;
          WitnessCertificate cert;
          cert.from_missing = false;
          cert.s = s;
          cert.t_num = t;
          cert.modulus = modulus;
          cert.q = q;
          cert.t = Rational(q, modulus);
          auto bounds = verified_bounds(V, cert.t);
          if (!bounds) continue;
          cert.bounds = std::move(*bounds);
          result.status = ConstructResult::Status::Witness;
          result.certificate = std::move(cert);
          return result;
        }
      }
    }
  }

  result.status = ConstructResult::Status::SearchFailed;
  result.reason = "no group produced a verifiable coprime pair";
  return result;
}

bool verify_loose_witness(const SpeedSet& V, const Rational& t) {
  for (std::int64_t v : V.speeds)
    if (!in_open_window(fractional_part(v, t), V.n())) return false;
  return true;
}

}  // namespace lrc
