#pragma once
// Exhaustive search for triples 1 < a < b < c such that ab+1, ac+1 and
// bc+1 are all terms of the k-step sequence.
//
// A solution with ab+1 = F_x, ac+1 = F_y, bc+1 = F_z has x <= y <= z
// (products of 2 < ... are > 1, and index lookup is unique above 1), and
//   a^2 (F_z - 1) = (F_x - 1)(F_y - 1),
// so the scan enumerates z-layers and, per candidate (x, y), needs one
// divisibility test and one perfect-square test. Two index cuts hold
// for any genuine solution (growth bound and gcd bound); both carry a
// safety slack of 2 and can be disabled entirely for cross-checking:
//   y >= ceil(z/2) - 2,   x >= ceil(z/(k+1)) - 4.

#include <kdioph/bigint.hpp>
#include <kdioph/sequence.hpp>
#include <kdioph/timeutil.hpp>

#include <json.hpp>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace kdioph {

struct TripleIndex {
  long x = 0, y = 0, z = 0;
};

struct TripleSolution {
  mpz_class a, b, c;
  long x = 0, y = 0, z = 0;
};

inline bool operator==(const TripleSolution& l, const TripleSolution& r) {
  return l.a == r.a && l.b == r.b && l.c == r.c && l.x == r.x && l.y == r.y &&
         l.z == r.z;
}

struct SearchCheckpoint {
  int k = 0;
  long z_max = 0;
  long cursor = 0;  // last fully completed z layer
  std::vector<TripleSolution> solutions;
  std::string timestamp;
};

struct SearchOptions {
  bool prune = true;
  int jobs = 1;
  std::optional<SearchCheckpoint> resume;
  // Invoked after each completed layer chunk with the current state.
  std::function<void(const SearchCheckpoint&)> on_checkpoint;
};

namespace detail {

inline void scan_layer(const SequenceCache& cache, int k, long z, bool prune,
                       std::vector<TripleSolution>& out) {
  const mpz_class& fz = cache.at(z);
  mpz_class m = fz - 1;
  if (m < 12) return;  // bc >= 2*3 * ... smallest admissible bc is 3*4
  mpz_class four_m = 4 * m;
  long y_lo = 4, x_lo = 4;
  if (prune) {
    y_lo = std::max(y_lo, (z + 1) / 2 - 2);
    x_lo = std::max(x_lo, (z + k) / (k + 1) - 4);
  }
  mpz_class g, q, a, b, c;
  for (long y = y_lo; y <= z; ++y) {
    mpz_class fy1 = cache.at(y) - 1;
    for (long x = x_lo; x <= y; ++x) {
      mpz_class fx1 = cache.at(x) - 1;
      g = fx1 * fy1;
      if (g < four_m) continue;  // a >= 2 forces (F_x-1)(F_y-1) >= 4(F_z-1)
      if (!mpz_divisible_p(g.get_mpz_t(), m.get_mpz_t())) continue;
      mpz_divexact(q.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      if (!is_square_fast(q)) continue;
      a = isqrt(q);
      if (a < 2) continue;
      if (!mpz_divisible_p(fx1.get_mpz_t(), a.get_mpz_t())) continue;
      if (!mpz_divisible_p(fy1.get_mpz_t(), a.get_mpz_t())) continue;
      b = fx1 / a;
      c = fy1 / a;
      if (!(a < b && b < c)) continue;
      if (b * c + 1 != fz) continue;  // defensive; implied algebraically
      out.push_back(TripleSolution{a, b, c, x, y, z});
    }
  }
}

}  // namespace detail

// Scans all z-layers up to z_max and returns every solution, ordered by
// (z, y, x). The sequence cache is fully materialized up front, so
// worker threads only ever read it.
inline std::vector<TripleSolution> search(int k, long z_max,
                                          const SearchOptions& opts = {}) {
  require_order(k);
  if (z_max < 1) {
    throw std::invalid_argument("search needs z_max >= 1");
  }
  int jobs = std::max(1, opts.jobs);
  SequenceCache cache(k);
  cache.materialize(z_max);

  long z_start = 4;
  std::vector<TripleSolution> solutions;
  if (opts.resume) {
    const SearchCheckpoint& cp = *opts.resume;
    if (cp.k != k || cp.z_max != z_max) {
      throw std::invalid_argument(
          "checkpoint does not match the requested search");
    }
    solutions = cp.solutions;
    z_start = std::max(z_start, cp.cursor + 1);
  }

  const SequenceCache& shared = cache;
  for (long chunk = z_start; chunk <= z_max; chunk += jobs) {
    long chunk_end = std::min(z_max, chunk + jobs - 1);
    std::vector<std::vector<TripleSolution>> found(
        static_cast<std::size_t>(chunk_end - chunk + 1));
    if (jobs == 1) {
      detail::scan_layer(shared, k, chunk, opts.prune, found[0]);
    } else {
      std::vector<std::thread> workers;
      workers.reserve(found.size());
      for (long z = chunk; z <= chunk_end; ++z) {
        workers.emplace_back([&shared, k, z, chunk, &found, &opts] {
          detail::scan_layer(shared, k, z, opts.prune,
                             found[static_cast<std::size_t>(z - chunk)]);
        });
      }
      for (std::thread& w : workers) w.join();
    }
    for (std::vector<TripleSolution>& layer : found) {
      solutions.insert(solutions.end(),
                       std::make_move_iterator(layer.begin()),
                       std::make_move_iterator(layer.end()));
    }
    if (opts.on_checkpoint) {
      SearchCheckpoint cp;
      cp.k = k;
      cp.z_max = z_max;
      cp.cursor = chunk_end;
      cp.solutions = solutions;
      cp.timestamp = utc_timestamp();
      opts.on_checkpoint(cp);
    }
  }
  return solutions;
}

// Confirms a candidate triple by exact membership of all three shifted
// products; returns the index triple when every product is a term.
inline std::optional<TripleIndex> verify_solution(int k, const mpz_class& a,
                                                  const mpz_class& b,
                                                  const mpz_class& c) {
  require_order(k);
  if (!(1 < a && a < b && b < c)) {
    throw std::invalid_argument("verify_solution requires 1 < a < b < c");
  }
  SequenceCache cache(k);
  std::optional<long> x = cache.membership(a * b + 1);
  if (!x) return std::nullopt;
  std::optional<long> y = cache.membership(a * c + 1);
  if (!y) return std::nullopt;
  std::optional<long> z = cache.membership(b * c + 1);
  if (!z) return std::nullopt;
  return TripleIndex{*x, *y, *z};
}

// Checkpoint (de)serialization: integers that can exceed 64 bits travel
// as decimal strings.
inline nlohmann::json checkpoint_to_json(const SearchCheckpoint& cp) {
  nlohmann::json solutions = nlohmann::json::array();
  for (const TripleSolution& s : cp.solutions) {
    solutions.push_back({{"a", s.a.get_str()},
                         {"b", s.b.get_str()},
                         {"c", s.c.get_str()},
                         {"x", s.x},
                         {"y", s.y},
                         {"z", s.z}});
  }
  return nlohmann::json{{"k", cp.k},
                        {"z_max", cp.z_max},
                        {"cursor", cp.cursor},
                        {"solutions", std::move(solutions)},
                        {"timestamp", cp.timestamp}};
}

inline SearchCheckpoint checkpoint_from_json(const nlohmann::json& j) {
  SearchCheckpoint cp;
  cp.k = j.at("k").get<int>();
  cp.z_max = j.at("z_max").get<long>();
  cp.cursor = j.at("cursor").get<long>();
  cp.timestamp = j.value("timestamp", std::string());
  for (const nlohmann::json& s : j.at("solutions")) {
    TripleSolution sol;
    sol.a = mpz_class(s.at("a").get<std::string>());
    sol.b = mpz_class(s.at("b").get<std::string>());
    sol.c = mpz_class(s.at("c").get<std::string>());
    sol.x = s.at("x").get<long>();
    sol.y = s.at("y").get<long>();
    sol.z = s.at("z").get<long>();
    cp.solutions.push_back(std::move(sol));
  }
  return cp;
}

}  // namespace kdioph
