#pragma once
// Value-side brute-force oracle for the triple search, deliberately
// sharing no code with the library: it builds the sequence with its own
// uint64 recurrence and enumerates 1 < a < b < c directly, so agreement
// with the index-side scan is meaningful.

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_set>
#include <vector>

namespace oracle {

struct ValueTriple {
  std::uint64_t a = 0, b = 0, c = 0;
  friend bool operator==(const ValueTriple& l, const ValueTriple& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c;
  }
  friend bool operator<(const ValueTriple& l, const ValueTriple& r) {
    return std::array<std::uint64_t, 3>{l.a, l.b, l.c} <
           std::array<std::uint64_t, 3>{r.a, r.b, r.c};
  }
};

// All sequence values <= limit, built from the recurrence directly
// (k-1 zeros, then 1, then windowed sums).
inline std::vector<std::uint64_t> sequence_values(int k, std::uint64_t limit) {
  std::vector<std::uint64_t> window(static_cast<std::size_t>(k), 0);
  window.back() = 1;
  std::vector<std::uint64_t> values{1};
  for (;;) {
    std::uint64_t next = 0;
    for (std::uint64_t w : window) next += w;
    if (next > limit) break;
    values.push_back(next);
    for (std::size_t i = 0; i + 1 < window.size(); ++i) {
      window[i] = window[i + 1];
    }
    window.back() = next;
  }
  return values;
}

// Largest index z with F_z <= limit (indexing from F_1 = 1).
inline long max_index_with_value_at_most(int k, std::uint64_t limit) {
  return static_cast<long>(sequence_values(k, limit).size());
}

// Every triple 1 < a < b < c with ab+1, ac+1, bc+1 all sequence values
// and bc+1 <= limit, in lexicographic order.
inline std::vector<ValueTriple> brute_force_triples(int k,
                                                    std::uint64_t limit) {
  std::vector<std::uint64_t> values = sequence_values(k, limit);
  std::unordered_set<std::uint64_t> member(values.begin(), values.end());
  std::vector<ValueTriple> out;
  for (std::uint64_t a = 2; a * (a + 1) + 1 <= limit; ++a) {
    for (std::uint64_t b = a + 1; a * b + 1 <= limit; ++b) {
      if (!member.count(a * b + 1)) continue;
      for (std::uint64_t c = b + 1; b * c + 1 <= limit; ++c) {
        if (!member.count(a * c + 1)) continue;
        if (!member.count(b * c + 1)) continue;
        out.push_back(ValueTriple{a, b, c});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
