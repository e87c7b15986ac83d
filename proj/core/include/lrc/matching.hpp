#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "lrc/arith_prog.hpp"
#include "lrc/checkpoint.hpp"

namespace lrc {

enum class CoprimeRelation { Coprime, TwoCoprime };

// Bipartite graph between two equal-length, disjoint APs; adjacency stored
// as one bitset row per left vertex.
struct CoprimeBipartiteGraph {
  ArithProg left;
  ArithProg right;
  CoprimeRelation relation = CoprimeRelation::Coprime;
  std::vector<std::vector<std::uint64_t>> adj;  // adj[i] bitset over right indices

  std::int64_t size() const { return left.length; }
  bool edge(std::int64_t i, std::int64_t j) const {
    return (adj[i][j >> 6] >> (j & 63)) & 1;
  }
};

CoprimeBipartiteGraph build_coprime_graph(const ArithProg& A, const ArithProg& B,
                                          CoprimeRelation relation);

// Either a perfect matching (as value pairs) or a Hall-violator pair (S, T)
// with no edge between them and |S| + |T| > |left|.
struct MatchingOutcome {
  bool perfect = false;
  std::vector<std::pair<std::int64_t, std::int64_t>> mapping;  // sorted by left value
  std::vector<std::int64_t> violator_left;                     // S, ascending
  std::vector<std::int64_t> violator_right;                    // T, ascending
};

MatchingOutcome maximum_matching(const CoprimeBipartiteGraph& G);

MatchingOutcome find_coprime_mapping(const ArithProg& A, const ArithProg& B);

// Adjacent intervals A = {l+1..l+k}, B = {l+k+1..l+2k}, matched through the
// parity split: 2-coprime matchings A0->B1 and A1->B0 assemble into a full
// coprime mapping. A failed side is lifted to a Hall violator of the full
// coprime graph.
MatchingOutcome adjacent_parity_mapping(std::int64_t k, std::int64_t ell);

struct AdjacentCase {
  std::int64_t k = 0;
  std::int64_t ell = 0;
  MatchingOutcome outcome;
};

struct AdjacentReport {
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;
  std::int64_t cases = 0;
  std::vector<AdjacentCase> failures;
};

// Runs adjacent_parity_mapping for every (k, ell) with k_min <= k <= k_max,
// 0 <= ell < k. k_min < 4 requires allow_small.
AdjacentReport verify_adjacent_range(std::int64_t k_min, std::int64_t k_max,
                                     bool allow_small = false, int threads = 1);

struct FFailure {
  std::int64_t level = 0;        // the 2m value the failure counts against
  std::int64_t cardinality = 0;  // |A| = |B|
  std::int64_t a_start = 0;
  std::int64_t b_start = 0;
  MatchingOutcome outcome;
};

struct FScanResult {
  std::int64_t n = 0;
  std::int64_t f_value = 2;
  std::vector<FFailure> failures;
  bool complete = true;
  std::vector<ScanRecord> records;  // in deterministic enumeration order
};

struct FScanOptions {
  bool include_overlapping = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // records already evaluated in a previous run (checkpoint replay)
  const std::map<std::string, ScanRecord>* resume = nullptr;
  std::function<void(const ScanRecord&)> emit;  // called for newly computed records
  int threads = 1;
};

// f(n): smallest even threshold such that every scanned pair of intervals
// with cardinality counting against 2m >= f(n) admits a coprime mapping.
// The scan covers even cardinalities 2, 4, ..., 2*floor(n/2); singleton
// pairs are also scanned and count against the lowest level 2m = 2.
FScanResult compute_f(std::int64_t n, const FScanOptions& options = {});

}  // namespace lrc
