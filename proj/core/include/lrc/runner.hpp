#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/rational.hpp"

namespace lrc {

// Strictly increasing positive integer speeds.
struct SpeedSet {
  std::vector<std::int64_t> speeds;

  static SpeedSet from(std::vector<std::int64_t> values);

  std::int64_t n() const { return static_cast<std::int64_t>(speeds.size()); }
  std::int64_t max_speed() const { return speeds.back(); }
};

// exact {v * t} in [0, 1)
Rational fractional_part(std::int64_t v, const Rational& t);

enum class InstanceTag { Loose, Tight, Counterexample };

struct InstanceClass {
  InstanceTag tag = InstanceTag::Counterexample;
  std::optional<Rational> witness;       // Loose: a time satisfying the open condition
  std::vector<Rational> witness_points;  // Tight: times satisfying the closed condition
};

// Exact classification by critical-point sweep over t in [0, 1). Candidate
// times are a/v, (a + 1/(n+1))/v and (a + n/(n+1))/v; the open condition is
// constant between consecutive candidates, so midpoints decide looseness.
InstanceClass classify_instance(const SpeedSet& V, std::int64_t budget_sum = 1'000'000);

// max([n] \ V), absent iff V = [n]
std::optional<std::int64_t> largest_missing(const SpeedSet& V);

struct SpeedBound {
  std::int64_t v = 0;
  Rational frac;  // {v t}
  Rational dist;  // distance to the nearest integer
};

struct WitnessCertificate {
  Rational t;
  bool from_missing = false;  // kind InverseMissing(x) vs CoprimePair
  std::int64_t x = 0;         // InverseMissing only
  std::int64_t s = 0;         // CoprimePair fields
  std::int64_t t_num = 0;
  std::int64_t modulus = 0;  // s + t_num
  std::int64_t q = 0;        // inverse of s mod modulus
  std::vector<SpeedBound> bounds;
};

// t = 1/x for the largest missing x when x > n - k and no speed is a
// multiple of x; fully verified before being returned.
std::optional<WitnessCertificate> witness_from_missing(const SpeedSet& V, std::int64_t k);

// Consecutive groups covering [n] plus the reversed layout over [n+1, 2n].
struct GroupPartition {
  std::int64_t n = 0;
  std::int64_t x = 0;
  std::int64_t script_m = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> groups_I;  // [start, end]
  std::vector<std::pair<std::int64_t, std::int64_t>> groups_J;
  std::size_t r_index = 0;  // group containing x, x+1, x+2 (0-based)
};

// Cuts [n] into groups of size 2M or 2M+2 (last group in [2M+2, 4M+3]),
// never separating x, x+1, x+2; lays out J-groups from n+1 in reverse order.
// Requires x <= n - (4M + 3).
GroupPartition build_partition(std::int64_t n, std::int64_t x, std::int64_t script_m);

struct GroupDiagnostic {
  std::size_t j = 0;  // 0-based group index
  std::int64_t s_size = 0;
  std::int64_t t_size = 0;
  std::int64_t two_m = 0;  // group cardinality
};

struct ConstructResult {
  enum class Status { Witness, Inapplicable, SearchFailed };
  Status status = Status::Inapplicable;
  std::optional<WitnessCertificate> certificate;
  std::string reason;
  std::int64_t k = 0;
  std::int64_t script_m_used = 0;
  std::vector<GroupDiagnostic> diagnostics;  // populated on search failure
};

// The constructive witness pipeline: inverse-of-missing shortcut when the
// largest missing x is within k of n, otherwise the group partition plus a
// coprime-pair search; every certificate is verified exactly.
ConstructResult construct_loose_witness(const SpeedSet& V,
                                        std::optional<std::int64_t> script_m = std::nullopt);

// exact check of 1/(n+1) < {v t} < n/(n+1) for every speed
bool verify_loose_witness(const SpeedSet& V, const Rational& t);

}  // namespace lrc
