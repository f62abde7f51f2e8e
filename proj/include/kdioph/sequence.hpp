#pragma once
// k-step Fibonacci sequences: each term is the sum of the k preceding
// ones, with base values F_{-(k-2)} = ... = F_0 = 0 and F_1 = 1.
// k = 2 gives the classical Fibonacci numbers.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kdioph {

inline void require_order(int k) {
  if (k < 2) {
    throw std::invalid_argument("sequence order k must be at least 2, got " +
                                std::to_string(k));
  }
}

// Append-only term cache. Growth is single-threaded; once materialized
// to the needed index the cache may be shared read-only across threads.
class SequenceCache {
 public:
  explicit SequenceCache(int k) : k_(k) {
    require_order(k);
    // Indices -(k-2) .. 0 hold zeros, index 1 holds 1.
    terms_.assign(static_cast<std::size_t>(k), 0);
    terms_.back() = 1;
  }

  int k() const { return k_; }
  long min_index() const { return -(static_cast<long>(k_) - 2); }
  // Largest index currently materialized.
  long high_water() const {
    return min_index() + static_cast<long>(terms_.size()) - 1;
  }

  void materialize(long n) {
    while (high_water() < n) {
      mpz_class next = 0;
      std::size_t size = terms_.size();
      for (std::size_t i = size - static_cast<std::size_t>(k_); i < size; ++i) {
        next += terms_[i];
      }
      terms_.push_back(std::move(next));
    }
  }

  // Term F_n; extends the cache as needed.
  const mpz_class& at(long n) {
    check_index(n);
    materialize(n);
    return terms_[static_cast<std::size_t>(n - min_index())];
  }

  // Term F_n without extension; the index must already be materialized.
  const mpz_class& at(long n) const {
    check_index(n);
    if (n > high_water()) {
      throw std::logic_error("term index " + std::to_string(n) +
                             " beyond materialized range");
    }
    return terms_[static_cast<std::size_t>(n - min_index())];
  }

  // Smallest index n >= 1 with F_n == v, if v occurs in the sequence.
  // (Terms are nondecreasing from index 1 on, so v = 1 resolves to 1.)
  std::optional<long> membership(const mpz_class& v) {
    if (v < 1) return std::nullopt;
    // Terms grow geometrically, so doubling the high-water mark reaches
    // any target value in O(log v) rounds.
    while (terms_.back() < v) {
      materialize(std::max<long>(high_water() + 1, 2 * high_water()));
    }
    auto first = terms_.begin() + static_cast<std::size_t>(1 - min_index());
    auto it = std::lower_bound(first, terms_.end(), v);
    if (it == terms_.end() || *it != v) return std::nullopt;
    return 1 + static_cast<long>(it - first);
  }

 private:
  void check_index(long n) const {
    if (n < min_index()) {
      throw std::invalid_argument(
          "term index " + std::to_string(n) + " below base range start " +
          std::to_string(min_index()) + " for k = " + std::to_string(k_));
    }
  }

  int k_;
  std::vector<mpz_class> terms_;
};

// One-off term evaluation.
inline mpz_class kfib(int k, long n) {
  SequenceCache cache(k);
  return cache.at(n);
}

// One-off membership test: smallest index n >= 1 with F_n == v.
inline std::optional<long> membership(int k, const mpz_class& v) {
  SequenceCache cache(k);
  return cache.membership(v);
}

}  // namespace kdioph
