#include <kdioph/triples.hpp>

#include "support/brute_force.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <vector>

using namespace kdioph;

namespace {

std::vector<oracle::ValueTriple> as_value_triples(
    const std::vector<TripleSolution>& solutions) {
  std::vector<oracle::ValueTriple> out;
  for (const TripleSolution& s : solutions) {
    out.push_back(oracle::ValueTriple{s.a.get_ui(), s.b.get_ui(),
                                      s.c.get_ui()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(search(1, 10), std::invalid_argument);
  CHECK_THROWS_AS(search(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_solution(2, mpz_class(1), mpz_class(2),
                                  mpz_class(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_solution(2, mpz_class(3), mpz_class(3),
                                  mpz_class(4)),
                  std::invalid_argument);
}

TEST_CASE("index search matches the value-side brute force") {
  for (int k = 2; k <= 4; ++k) {
    const std::uint64_t limit = 1000000;
    long z_max = oracle::max_index_with_value_at_most(k, limit);
    auto expected = oracle::brute_force_triples(k, limit);

    SearchOptions opts;
    auto found = search(k, z_max, opts);
    INFO("k=" << k << " z_max=" << z_max);
    CHECK(as_value_triples(found) == expected);

    SearchOptions raw;
    raw.prune = false;
    auto found_raw = search(k, z_max, raw);
    CHECK(found_raw == found);
  }
}

TEST_CASE("worker count does not change the result") {
  SearchOptions serial;
  auto sols1 = search(3, 40, serial);
  SearchOptions parallel;
  parallel.jobs = 4;
  auto sols4 = search(3, 40, parallel);
  CHECK(sols1 == sols4);
}

TEST_CASE("checkpoint resume reproduces an uninterrupted run") {
  // Capture a mid-run checkpoint, then restart from it; the combined
  // solution list and order must match the uninterrupted run.
  SearchOptions full;
  auto uninterrupted = search(2, 36, full);

  SearchCheckpoint mid;
  bool captured = false;
  SearchOptions with_cp;
  with_cp.jobs = 2;
  with_cp.on_checkpoint = [&](const SearchCheckpoint& cp) {
    if (!captured && cp.cursor >= 20) {
      mid = cp;
      captured = true;
    }
  };
  search(2, 36, with_cp);
  REQUIRE(captured);
  CHECK(mid.k == 2);
  CHECK(mid.z_max == 36);

  SearchOptions resumed;
  resumed.resume = mid;
  auto rest = search(2, 36, resumed);
  CHECK(rest == uninterrupted);
}

TEST_CASE("mismatched checkpoints are rejected") {
  SearchCheckpoint cp;
  cp.k = 3;
  cp.z_max = 50;
  cp.cursor = 10;
  SearchOptions opts;
  opts.resume = cp;
  CHECK_THROWS_AS(search(2, 50, opts), std::invalid_argument);
  cp.k = 2;
  cp.z_max = 40;
  opts.resume = cp;
  CHECK_THROWS_AS(search(2, 50, opts), std::invalid_argument);
}

TEST_CASE("checkpoint serialization round trip") {
  SearchCheckpoint cp;
  cp.k = 4;
  cp.z_max = 100;
  cp.cursor = 42;
  cp.timestamp = "2024-05-01T00:00:00Z";
  cp.solutions.push_back(TripleSolution{
      mpz_class("123456789012345678901"), mpz_class("23456789"),
      mpz_class("3456789012"), 7, 9, 11});
  SearchCheckpoint back = checkpoint_from_json(checkpoint_to_json(cp));
  CHECK(back.k == cp.k);
  CHECK(back.z_max == cp.z_max);
  CHECK(back.cursor == cp.cursor);
  CHECK(back.timestamp == cp.timestamp);
  REQUIRE(back.solutions.size() == 1);
  CHECK(back.solutions[0] == cp.solutions[0]);
}

TEST_CASE("verify_solution accepts exactly the membership triples") {
  // 2*3+1 = 7 is not a classical Fibonacci number.
  CHECK_FALSE(verify_solution(2, mpz_class(2), mpz_class(3), mpz_class(7))
                  .has_value());
  // ab+1 = 13 and ac+1 = 21 are terms, bc+1 = 61 is not.
  CHECK_FALSE(verify_solution(2, mpz_class(2), mpz_class(6), mpz_class(10))
                  .has_value());

  // Synthetic full hit: k=3 values 7, 13, 21 would need
  // ab+1, ac+1, bc+1 in the tribonacci list; (a,b,c) = (2, 3, 6) gives
  // 7, 13, 19 -> 19 is not a term, so still a miss.
  CHECK_FALSE(verify_solution(3, mpz_class(2), mpz_class(3), mpz_class(6))
                  .has_value());

  // (a, b, c) = (2, 6, 11): ab+1 = 13, ac+1 = 23, bc+1 = 67 -> miss.
  CHECK_FALSE(verify_solution(3, mpz_class(2), mpz_class(6), mpz_class(11))
                  .has_value());
}

TEST_CASE("verify_solution reports index triples for constructed hits") {
  // Construct a hit for the *membership* contract (not a genuine
  // Diophantine triple of the searched form): pick products that land
  // on terms. For k=2: a=2, b=4 -> ab+1 = 9: not a term. There is no
  // small genuine triple (the search result is empty), so instead
  // verify consistency: any solution returned by search must verify.
  auto sols = search(2, 38);
  for (const TripleSolution& s : sols) {
    auto idx = verify_solution(2, s.a, s.b, s.c);
    REQUIRE(idx.has_value());
    CHECK(idx->x == s.x);
    CHECK(idx->y == s.y);
    CHECK(idx->z == s.z);
  }
  CHECK(sols.empty());
}

TEST_CASE("brute force oracle self-check") {
  // The oracle's own sequence values must match the library's.
  auto values = oracle::sequence_values(3, 100000);
  SequenceCache f(3);
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(mpz_class(static_cast<unsigned long>(values[i])) ==
          f.at(static_cast<long>(i) + 1));
  }
  CHECK(oracle::max_index_with_value_at_most(2, 832040) == 30);
  CHECK(oracle::max_index_with_value_at_most(2, 832039) == 29);
}
