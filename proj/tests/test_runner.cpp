#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lrc/errors.hpp"
#include "lrc/runner.hpp"

using namespace lrc;

namespace {

std::vector<std::int64_t> range_without(std::int64_t n, std::int64_t hole,
                                        std::int64_t extra) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 1; v <= n; ++v)
    if (v != hole) out.push_back(v);
  out.push_back(extra);
  return out;
}

bool open_at(const SpeedSet& V, const Rational& t) {
  const std::int64_t n = V.n();
  for (std::int64_t v : V.speeds) {
    const Rational f = fractional_part(v, t);
    if (!(f * (n + 1) > 1 && f * (n + 1) < n)) return false;
  }
  return true;
}

bool closed_at(const SpeedSet& V, const Rational& t) {
  const std::int64_t n = V.n();
  for (std::int64_t v : V.speeds) {
    const Rational f = fractional_part(v, t);
    if (!(f * (n + 1) >= 1 && f * (n + 1) <= n)) return false;
  }
  return true;
}

// dense rational grid; any loose time it finds is a hard lower bound on the class
bool grid_finds_loose(const SpeedSet& V) {
  std::int64_t denom = 1;
  for (std::int64_t v : V.speeds) denom = std::lcm(denom, v);
  denom *= 4 * (V.n() + 1);
  for (std::int64_t i = 0; i < denom; ++i)
    if (open_at(V, Rational(i, denom))) return true;
  return false;
}

}  // namespace

TEST_CASE("SpeedSet validation") {
  CHECK_THROWS_AS(SpeedSet::from({}), std::invalid_argument);
  CHECK_THROWS_AS(SpeedSet::from({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(SpeedSet::from({2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SpeedSet::from({3, 2}), std::invalid_argument);
  CHECK(SpeedSet::from({1, 2, 4}).n() == 3);
  CHECK(SpeedSet::from({1, 2, 4}).max_speed() == 4);
}

TEST_CASE("fractional_part") {
  CHECK(fractional_part(3, Rational(1, 2)) == Rational(1, 2));
  CHECK(fractional_part(4, Rational(1, 2)) == Rational(0));
  CHECK(fractional_part(7, Rational(2, 5)) == Rational(4, 5));
  CHECK(fractional_part(1, Rational(0)) == Rational(0));
  for (std::int64_t v = 1; v <= 20; ++v) {
    const Rational f = fractional_part(v, Rational(3, 7));
    CHECK(f >= 0);
    CHECK(f < 1);
  }
}

TEST_CASE("classify_instance tight families") {
  for (std::int64_t n = 2; n <= 10; ++n) {
    std::vector<std::int64_t> speeds(static_cast<std::size_t>(n));
    std::iota(speeds.begin(), speeds.end(), 1);
    auto V = SpeedSet::from(speeds);
    auto cls = classify_instance(V);
    CHECK(cls.tag == InstanceTag::Tight);
    REQUIRE_FALSE(cls.witness_points.empty());
    for (const Rational& t : cls.witness_points) {
      CHECK(closed_at(V, t));
      CHECK_FALSE(open_at(V, t));
    }
  }

  auto V = SpeedSet::from({1, 2, 3, 4, 5, 7, 12});
  CHECK(classify_instance(V).tag == InstanceTag::Tight);
}

TEST_CASE("classify_instance loose witnesses verify") {
  auto V = SpeedSet::from({1, 3});
  auto cls = classify_instance(V);
  CHECK(cls.tag == InstanceTag::Loose);
  REQUIRE(cls.witness.has_value());
  CHECK(verify_loose_witness(V, *cls.witness));
}

TEST_CASE("classify_instance agrees with the grid oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> speeds;
    std::int64_t v = 1 + rng() % 3;
    const int count = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      speeds.push_back(v);
      v += 1 + rng() % 4;
    }
    auto V = SpeedSet::from(speeds);
    auto cls = classify_instance(V);
    const bool grid_loose = grid_finds_loose(V);
    if (grid_loose) CHECK(cls.tag == InstanceTag::Loose);
    if (cls.tag == InstanceTag::Loose) {
      REQUIRE(cls.witness.has_value());
      CHECK(verify_loose_witness(V, *cls.witness));
    }
    if (cls.tag == InstanceTag::Counterexample) CHECK_FALSE(grid_loose);
  }

  auto direct = classify_instance(SpeedSet::from({1, 2, 4}));
  if (direct.tag == InstanceTag::Loose)
    CHECK(verify_loose_witness(SpeedSet::from({1, 2, 4}), *direct.witness));
  CHECK(grid_finds_loose(SpeedSet::from({1, 2, 4})) ==
        (direct.tag == InstanceTag::Loose));
}

TEST_CASE("classify_instance budget") {
  CHECK_THROWS_AS(classify_instance(SpeedSet::from({999'999, 1'000'000})),
                  resource_limit_error);
  CHECK_NOTHROW(classify_instance(SpeedSet::from({1, 2}), 100));
}

TEST_CASE("largest_missing") {
  CHECK(largest_missing(SpeedSet::from({1, 2, 4})) == 3);
  CHECK_FALSE(largest_missing(SpeedSet::from({1, 2, 3})).has_value());
  CHECK(largest_missing(SpeedSet::from({2, 3, 4, 5})) == 1);
  CHECK(largest_missing(SpeedSet::from({1, 2, 3, 5, 9})) == 4);
}

TEST_CASE("witness_from_missing") {
  // x = n = 10, t = 1/10
  auto V = SpeedSet::from({1, 2, 3, 4, 5, 6, 7, 8, 9, 11});
  auto cert = witness_from_missing(V, 1);
  REQUIRE(cert.has_value());
  CHECK(cert->from_missing);
  CHECK(cert->x == 10);
  CHECK(cert->t == Rational(1, 10));
  CHECK(verify_loose_witness(V, cert->t));
  for (const auto& b : cert->bounds) {
    CHECK(b.frac == fractional_part(b.v, cert->t));
    CHECK(b.dist == std::min(b.frac, Rational(1) - b.frac));
  }

  // 8 is a multiple of x = 4
  CHECK_FALSE(witness_from_missing(SpeedSet::from({1, 2, 3, 5, 8}), 5).has_value());

  // x = 3 <= n - k
  CHECK_FALSE(witness_from_missing(SpeedSet::from({1, 2, 4, 5, 6}), 1).has_value());
}

TEST_CASE("build_partition example") {
  auto part = build_partition(50, 10, 2);
  const std::size_t count = part.groups_I.size();
  REQUIRE(count >= 2);

  std::int64_t covered = 0;
  for (std::size_t j = 0; j < count; ++j) {
    auto [lo, hi] = part.groups_I[j];
    const std::int64_t size = hi - lo + 1;
    CHECK(lo == covered + 1);
    covered = hi;
    if (j + 1 < count)
      CHECK((size == 4 || size == 6));
    else {
      CHECK(size >= 6);
      CHECK(size <= 11);
    }
  }
  CHECK(covered == 50);

  const auto& rg = part.groups_I[part.r_index];
  CHECK(rg.first <= 10);
  CHECK(12 <= rg.second);

  const std::int64_t last_size =
      part.groups_I[count - 1].second - part.groups_I[count - 1].first + 1;
  for (std::size_t j = 0; j + 1 < count; ++j)
    CHECK(part.groups_I[j].first + part.groups_J[j].second == 2 * 50 + 1 - last_size);

  CHECK_THROWS_AS(build_partition(50, 48, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_partition(50, 10, 0), std::invalid_argument);
}

TEST_CASE("build_partition invariants on random valid triples") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 400; ++trial) {
    const std::int64_t script_m = 1 + rng() % 3;
    const std::int64_t cap = 4 * script_m + 3;
    const std::int64_t n = cap + 5 + rng() % 120;
    const std::int64_t x = 1 + rng() % (n - cap);
    auto part = build_partition(n, x, script_m);
    const std::size_t count = part.groups_I.size();
    REQUIRE(count >= 2);

    std::int64_t covered = 0;
    for (std::size_t j = 0; j < count; ++j) {
      auto [lo, hi] = part.groups_I[j];
      CHECK(lo == covered + 1);
      covered = hi;
      const std::int64_t size = hi - lo + 1;
      if (j + 1 < count)
        CHECK((size == 2 * script_m || size == 2 * script_m + 2));
      else {
        CHECK(size >= 2 * script_m + 2);
        CHECK(size <= cap);
      }
      // J partner has identical cardinality
      CHECK(part.groups_J[j].second - part.groups_J[j].first + 1 == size);
      // no boundary splits x, x+1, x+2
      if (j + 1 < count) CHECK((hi < x || hi > x + 1));
    }
    CHECK(covered == n);

    // J-groups tile [n+1, 2n] in reversed order
    CHECK(part.groups_J[count - 2].first == n + 1);
    CHECK(part.groups_J[count - 1].second == 2 * n);
    std::vector<std::pair<std::int64_t, std::int64_t>> J = part.groups_J;
    std::sort(J.begin(), J.end());
    std::int64_t jcov = n;
    for (auto [lo, hi] : J) {
      CHECK(lo == jcov + 1);
      jcov = hi;
    }
    CHECK(jcov == 2 * n);

    CHECK(part.r_index + 1 < count);
    CHECK(part.groups_I[part.r_index].first <= x);
    CHECK(x + 2 <= part.groups_I[part.r_index].second);

    const std::int64_t last_size =
        part.groups_I[count - 1].second - part.groups_I[count - 1].first + 1;
    for (std::size_t j = 0; j + 1 < count; ++j)
      CHECK(part.groups_I[j].first + part.groups_J[j].second == 2 * n + 1 - last_size);
  }
}

TEST_CASE("group gaps account for every missing value") {
  // |V| = n with speeds inside [2n]: missing counts across I and J groups sum to n
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t n = 30 + rng() % 60;
    std::vector<std::int64_t> pool(static_cast<std::size_t>(2 * n));
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::int64_t> speeds(pool.begin(), pool.begin() + n);
    std::sort(speeds.begin(), speeds.end());
    auto V = SpeedSet::from(speeds);

    const std::int64_t script_m = 1;
    auto x = largest_missing(V);
    if (!x || *x > n - (4 * script_m + 3)) continue;
    auto part = build_partition(n, *x, script_m);

    std::int64_t total = 0;
    auto count_missing = [&](std::pair<std::int64_t, std::int64_t> g) {
      std::int64_t c = 0;
      for (std::int64_t v = g.first; v <= g.second; ++v)
        if (!std::binary_search(speeds.begin(), speeds.end(), v)) ++c;
      return c;
    };
    for (std::size_t j = 0; j < part.groups_I.size(); ++j)
      total += count_missing(part.groups_I[j]) + count_missing(part.groups_J[j]);
    CHECK(total == n);
  }
}

TEST_CASE("construct_loose_witness coprime-pair path") {
  auto V = SpeedSet::from(range_without(40, 20, 45));
  auto result = construct_loose_witness(V, 2);
  CHECK(result.status == ConstructResult::Status::Witness);
  CHECK(result.k == 17);
  CHECK(result.script_m_used == 2);
  REQUIRE(result.certificate.has_value());
  const auto& cert = *result.certificate;
  CHECK_FALSE(cert.from_missing);
  CHECK(std::gcd(cert.s, cert.t_num) == 1);
  CHECK(cert.modulus == cert.s + cert.t_num);
  CHECK(cert.q * cert.s % cert.modulus == 1);
  CHECK(cert.t == Rational(cert.q, cert.modulus));
  CHECK(cert.modulus > 2 * 40 - 2 * 17);
  CHECK(cert.modulus <= 2 * 40);
  CHECK(verify_loose_witness(V, cert.t));
  CHECK(classify_instance(V).tag == InstanceTag::Loose);

  // modular condition and the distance bound it implies, checked both ways
  for (std::int64_t v : V.speeds) {
    const std::int64_t r = v % cert.modulus;
    CHECK(r != 0);
    CHECK(r != cert.s);
    CHECK(r != cert.t_num);
  }
  for (const auto& b : cert.bounds) CHECK(b.dist >= Rational(2, cert.modulus));

  // default script_m search finds a witness too
  auto auto_m = construct_loose_witness(V);
  CHECK(auto_m.status == ConstructResult::Status::Witness);
  CHECK(verify_loose_witness(V, auto_m.certificate->t));
}

TEST_CASE("construct_loose_witness missing shortcut") {
  auto V = SpeedSet::from({1, 2, 3, 4, 5, 6, 7, 8, 9, 11});
  auto result = construct_loose_witness(V);
  CHECK(result.status == ConstructResult::Status::Witness);
  REQUIRE(result.certificate.has_value());
  CHECK(result.certificate->from_missing);
  CHECK(result.certificate->x == 10);
  CHECK(verify_loose_witness(V, result.certificate->t));
}

TEST_CASE("construct_loose_witness inapplicable cases") {
  auto low = construct_loose_witness(SpeedSet::from({1, 2, 3}));
  CHECK(low.status == ConstructResult::Status::Inapplicable);

  // v_n = 2n leaves k = 0
  auto high = construct_loose_witness(SpeedSet::from(range_without(20, 10, 40)));
  CHECK(high.status == ConstructResult::Status::Inapplicable);
}

TEST_CASE("construct_loose_witness seeded batch never fails verification") {
  std::mt19937_64 rng(59);
  int witnesses = 0, other = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t n = 30 + rng() % 31;
    const std::int64_t x = 4 + rng() % (n - 15);
    const std::int64_t vn = n + 1 + rng() % (n - 15);
    auto V = SpeedSet::from(range_without(n, x, vn));
    auto result = construct_loose_witness(V);
    if (result.status == ConstructResult::Status::Witness) {
      ++witnesses;
      REQUIRE(result.certificate.has_value());
      CHECK(verify_loose_witness(V, result.certificate->t));
      CHECK(classify_instance(V).tag == InstanceTag::Loose);
    } else {
      ++other;
      CHECK_FALSE(result.reason.empty());
    }
  }
  CHECK(witnesses > 0);
  CHECK(witnesses + other == 60);
}

TEST_CASE("verify_loose_witness examples") {
  CHECK_FALSE(verify_loose_witness(SpeedSet::from({1, 2}), Rational(1, 2)));
  CHECK_FALSE(verify_loose_witness(SpeedSet::from({1, 2}), Rational(5, 12)));
  CHECK(verify_loose_witness(SpeedSet::from({1, 3}), Rational(1, 2)));
}
