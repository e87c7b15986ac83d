#include "lrc/matching.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "lrc/parallel.hpp"
#include "lrc/sieve.hpp"

namespace lrc {

namespace {

template <typename F>
void for_each_bit(const std::vector<std::uint64_t>& row, F&& fn) {
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      fn(static_cast<std::int64_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

ArithProg even_part(std::int64_t lo, std::int64_t hi) {
  std::int64_t start = lo + (lo & 1);
  if (start > hi) return ArithProg(std::max<std::int64_t>(start, 2), 2, 0);
  return ArithProg(start, 2, (hi - start) / 2 + 1);
}

ArithProg odd_part(std::int64_t lo, std::int64_t hi) {
  std::int64_t start = (lo & 1) ? lo : lo + 1;
  if (start > hi) return ArithProg(start, 2, 0);
  return ArithProg(start, 2, (hi - start) / 2 + 1);
}

CoprimeBipartiteGraph build_graph_unchecked(const ArithProg& A, const ArithProg& B,
                                            CoprimeRelation relation) {
  CoprimeBipartiteGraph G;
  G.left = A;
  G.right = B;
  G.relation = relation;
  const std::int64_t n = A.length;
  const std::size_t words = static_cast<std::size_t>((n + 63) / 64);
  G.adj.assign(static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t a = A[i];
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t b = B[j];
      const bool ok = relation == CoprimeRelation::Coprime ? std::gcd(a, b) == 1
                                                           : is_two_coprime(a, b);
      if (ok) G.adj[i][j >> 6] |= std::uint64_t(1) << (j & 63);
    }
  }
  return G;
}

}  // namespace

CoprimeBipartiteGraph build_coprime_graph(const ArithProg& A, const ArithProg& B,
                                          CoprimeRelation relation) {
  if (A.length != B.length)
    throw std::invalid_argument("build_coprime_graph: unequal lengths");
  if (!disjoint(A, B))
    throw std::invalid_argument("build_coprime_graph: sides must be disjoint");
  return build_graph_unchecked(A, B, relation);
}

MatchingOutcome maximum_matching(const CoprimeBipartiteGraph& G) {
  const std::int64_t n = G.size();
  constexpr std::int64_t kInf = std::int64_t(1) << 60;
  std::vector<std::int64_t> match_l(n, -1), match_r(n, -1), dist(n);

  auto bfs = [&]() {
    std::queue<std::int64_t> queue;
    bool found = false;
    for (std::int64_t i = 0; i < n; ++i) {
      dist[i] = match_l[i] == -1 ? 0 : kInf;
      if (dist[i] == 0) queue.push(i);
    }
    while (!queue.empty()) {
      std::int64_t i = queue.front();
      queue.pop();
      for_each_bit(G.adj[i], [&](std::int64_t j) {
        std::int64_t k = match_r[j];
        if (k == -1) {
          found = true;
        } else if (dist[k] == kInf) {
          dist[k] = dist[i] + 1;
          queue.push(k);
        }
      });
    }
    return found;
  };

  std::function<bool(std::int64_t)> dfs = [&](std::int64_t i) {
    bool augmented = false;
    for (std::size_t w = 0; w < G.adj[i].size() && !augmented; ++w) {
      std::uint64_t bits = G.adj[i][w];
      while (bits) {
        std::int64_t j = static_cast<std::int64_t>(w * 64 + std::countr_zero(bits));
        bits &= bits - 1;
        std::int64_t k = match_r[j];
        if (k == -1 || (dist[k] == dist[i] + 1 && dfs(k))) {
          match_l[i] = j;
          match_r[j] = i;
          augmented = true;
          break;
        }
      }
    }
    if (!augmented) dist[i] = kInf;
    return augmented;
  };

  std::int64_t matched = 0;
  while (bfs()) {
    for (std::int64_t i = 0; i < n; ++i)
      if (match_l[i] == -1 && dfs(i)) ++matched;
  }

  MatchingOutcome out;
  if (matched == n) {
    out.perfect = true;
    out.mapping.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
      out.mapping.emplace_back(G.left[i], G.right[match_l[i]]);
    return out;
  }

  // Hall violator from the final alternating reachability: S = left vertices
  // reachable from an unmatched left vertex, T = right vertices not reached.
  std::vector<char> vis_l(static_cast<std::size_t>(n), 0), vis_r(static_cast<std::size_t>(n), 0);
  std::queue<std::int64_t> queue;
  for (std::int64_t i = 0; i < n; ++i)
    if (match_l[i] == -1) {
      vis_l[i] = 1;
      queue.push(i);
    }
  while (!queue.empty()) {
    std::int64_t i = queue.front();
    queue.pop();
    for_each_bit(G.adj[i], [&](std::int64_t j) {
      if (vis_r[j]) return;
      vis_r[j] = 1;
      std::int64_t k = match_r[j];
      if (k != -1 && !vis_l[k]) {
        vis_l[k] = 1;
        queue.push(k);
      }
    });
  }
  for (std::int64_t i = 0; i < n; ++i)
    if (vis_l[i]) out.violator_left.push_back(G.left[i]);
  for (std::int64_t j = 0; j < n; ++j)
    if (!vis_r[j]) out.violator_right.push_back(G.right[j]);
  return out;
}

MatchingOutcome find_coprime_mapping(const ArithProg& A, const ArithProg& B) {
  return maximum_matching(build_coprime_graph(A, B, CoprimeRelation::Coprime));
}

MatchingOutcome adjacent_parity_mapping(std::int64_t k, std::int64_t ell) {
  if (k < 1 || ell < 0 || ell >= k)
    throw std::invalid_argument("adjacent_parity_mapping: need 0 <= ell < k");
  const std::int64_t a_lo = ell + 1, a_hi = ell + k;
  const std::int64_t b_lo = ell + k + 1, b_hi = ell + 2 * k;
  const ArithProg a_even = even_part(a_lo, a_hi), a_odd = odd_part(a_lo, a_hi);
  const ArithProg b_even = even_part(b_lo, b_hi), b_odd = odd_part(b_lo, b_hi);
  // consecutive intervals: |A0| = |B1| and |A1| = |B0|
  MatchingOutcome even_side =
      maximum_matching(build_coprime_graph(a_even, b_odd, CoprimeRelation::TwoCoprime));
  MatchingOutcome odd_side =
      maximum_matching(build_coprime_graph(a_odd, b_even, CoprimeRelation::TwoCoprime));

  MatchingOutcome out;
  if (even_side.perfect && odd_side.perfect) {
    out.perfect = true;
    out.mapping = even_side.mapping;
    out.mapping.insert(out.mapping.end(), odd_side.mapping.begin(), odd_side.mapping.end());
    std::sort(out.mapping.begin(), out.mapping.end());
    return out;
  }
  // Lift the failed side's 2-coprime violator to the full coprime graph.
  // An even S has no coprime edge into any even number, so the opposite
  // parity class of B (resp. A) pads the violator to full size.
  if (!even_side.perfect) {
    out.violator_left = even_side.violator_left;
    out.violator_right = even_side.violator_right;
    for (std::int64_t i = 0; i < b_even.length; ++i)
      out.violator_right.push_back(b_even[i]);
    std::sort(out.violator_right.begin(), out.violator_right.end());
  } else {
    out.violator_left = odd_side.violator_left;
    for (std::int64_t i = 0; i < a_even.length; ++i)
      out.violator_left.push_back(a_even[i]);
    std::sort(out.violator_left.begin(), out.violator_left.end());
    out.violator_right = odd_side.violator_right;
  }
  return out;
}

AdjacentReport verify_adjacent_range(std::int64_t k_min, std::int64_t k_max,
                                     bool allow_small, int threads) {
  if (k_min < 4 && !allow_small)
    throw std::invalid_argument("verify_adjacent_range: k_min < 4 requires allow_small");
  if (k_min < 1 || k_min > k_max)
    throw std::invalid_argument("verify_adjacent_range: bad range");
  AdjacentReport report;
  report.k_min = k_min;
  report.k_max = k_max;
  std::vector<std::pair<std::int64_t, std::int64_t>> cases;
  for (std::int64_t k = k_min; k <= k_max; ++k)
    for (std::int64_t ell = 0; ell < k; ++ell) cases.emplace_back(k, ell);
  report.cases = static_cast<std::int64_t>(cases.size());
  std::vector<MatchingOutcome> outcomes(cases.size());
  parallel_for(static_cast<std::int64_t>(cases.size()), threads, [&](std::int64_t i) {
    outcomes[static_cast<std::size_t>(i)] =
        adjacent_parity_mapping(cases[static_cast<std::size_t>(i)].first,
                                cases[static_cast<std::size_t>(i)].second);
  });
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (!outcomes[i].perfect)
      report.failures.push_back({cases[i].first, cases[i].second, std::move(outcomes[i])});
  return report;
}

namespace {

struct FTask {
  std::int64_t level;
  std::int64_t cardinality;
  std::int64_t a_start;
  std::int64_t b_start;
};

MatchingOutcome evaluate_pair(std::int64_t cardinality, std::int64_t a_start,
                              std::int64_t b_start) {
  const ArithProg A(a_start, 1, cardinality), B(b_start, 1, cardinality);
  // overlapping pairs are allowed here; shared values only connect at 1
  return maximum_matching(build_graph_unchecked(A, B, CoprimeRelation::Coprime));
}

}  // namespace

FScanResult compute_f(std::int64_t n, const FScanOptions& options) {
  if (n < 2) throw std::invalid_argument("compute_f: n must be >= 2");
  FScanResult result;
  result.n = n;

  // scan plan: singletons count against level 2, then even cardinalities
  std::vector<FTask> tasks;
  std::vector<std::int64_t> cards;
  cards.push_back(1);
  for (std::int64_t c = 2; c <= 2 * (n / 2); c += 2) cards.push_back(c);
  for (std::int64_t c : cards) {
    const std::int64_t level = c == 1 ? 2 : c;
    for (std::int64_t a = 1; a + c - 1 <= n; ++a) {
      const std::int64_t b_lo = options.include_overlapping ? a + 1 : a + c;
      for (std::int64_t b = b_lo; b + c - 1 <= n; ++b)
        tasks.push_back({level, c, a, b});
    }
  }

  const std::size_t block = options.threads > 1 ? 256 : 1;
  std::vector<MatchingOutcome> outcomes(tasks.size());
  std::vector<char> computed(tasks.size(), 0);
  std::size_t idx = 0;
  bool out_of_budget = false;
  while (idx < tasks.size() && !out_of_budget) {
    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline) {
      out_of_budget = true;
      break;
    }
    const std::size_t end = std::min(tasks.size(), idx + block);
    parallel_for(static_cast<std::int64_t>(end - idx), options.threads, [&](std::int64_t off) {
      const std::size_t i = idx + static_cast<std::size_t>(off);
      const FTask& t = tasks[i];
      ScanRecord probe{n, t.level, t.cardinality, t.a_start, t.b_start, false};
      if (options.resume) {
        auto it = options.resume->find(probe.key());
        if (it != options.resume->end() && it->second.ok) return;  // known good, skip
      }
      outcomes[i] = evaluate_pair(t.cardinality, t.a_start, t.b_start);
      computed[i] = 1;
    });
    // sequential commit keeps records and emitted checkpoints ordered
    for (std::size_t i = idx; i < end; ++i) {
      const FTask& t = tasks[i];
      ScanRecord rec{n, t.level, t.cardinality, t.a_start, t.b_start, false};
      bool resumed = false;
      if (options.resume) {
        auto it = options.resume->find(rec.key());
        if (it != options.resume->end() && it->second.ok) {
          rec.ok = true;
          resumed = true;
        }
      }
      if (!resumed) {
        rec.ok = outcomes[i].perfect;
        if (options.emit) options.emit(rec);
      }
      result.records.push_back(rec);
      if (!rec.ok) {
        if (!computed[i]) outcomes[i] = evaluate_pair(t.cardinality, t.a_start, t.b_start);
        result.failures.push_back({t.level, t.cardinality, t.a_start, t.b_start,
                                   std::move(outcomes[i])});
      }
    }
    idx = end;
  }
  result.complete = !out_of_budget;
  std::int64_t worst = 0;
  for (const auto& f : result.failures) worst = std::max(worst, f.level);
  result.f_value = worst == 0 ? 2 : worst + 2;
  return result;
}

}  // namespace lrc
