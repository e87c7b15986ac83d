#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lrc {

// Integer arithmetic progression with common difference 1 or 2.
struct ArithProg {
  std::int64_t start = 1;
  std::int64_t step = 1;   // 1 or 2
  std::int64_t length = 0;

  ArithProg() = default;
  ArithProg(std::int64_t start_, std::int64_t step_, std::int64_t length_)
      : start(start_), step(step_), length(length_) {
    if (start < 1) throw std::invalid_argument("ArithProg: start must be positive");
    if (step != 1 && step != 2) throw std::invalid_argument("ArithProg: step must be 1 or 2");
    if (length < 0) throw std::invalid_argument("ArithProg: negative length");
  }

  static ArithProg interval(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return ArithProg(lo, 1, 0);
    return ArithProg(lo, 1, hi - lo + 1);
  }

  bool empty() const { return length == 0; }
  std::int64_t operator[](std::int64_t i) const { return start + i * step; }
  std::int64_t back() const { return start + (length - 1) * step; }

  bool contains(std::int64_t v) const {
    if (length == 0 || v < start || v > back()) return false;
    return (v - start) % step == 0;
  }

  std::vector<std::int64_t> values() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) out.push_back((*this)[i]);
    return out;
  }
};

inline bool disjoint(const ArithProg& a, const ArithProg& b) {
  if (a.empty() || b.empty()) return true;
  if (a.back() < b.start || b.back() < a.start) return true;
  if (a.step == 2 && b.step == 2 && (a.start & 1) != (b.start & 1)) return true;
  // overlapping span with a shared parity class: some element collides
  for (std::int64_t i = 0; i < a.length; ++i)
    if (b.contains(a[i])) return false;
  return true;
}

}  // namespace lrc
