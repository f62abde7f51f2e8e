#include <kdioph/sequence.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <vector>

using namespace kdioph;

TEST_CASE("order validation") {
  CHECK_THROWS_AS(SequenceCache(1), std::invalid_argument);
  CHECK_THROWS_AS(SequenceCache(0), std::invalid_argument);
  CHECK_THROWS_AS(SequenceCache(-3), std::invalid_argument);
  CHECK_NOTHROW(SequenceCache(2));
}

TEST_CASE("k=2 matches the classical sequence") {
  SequenceCache f(2);
  std::vector<long> expected = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(f.at(static_cast<long>(i) + 1) == expected[i]);
  }
  CHECK(f.at(0) == 0);
  CHECK(f.at(30) == 832040);
  CHECK(f.at(50) == mpz_class("12586269025"));
}

TEST_CASE("k=3 and k=4 prefixes") {
  SequenceCache t(3);
  std::vector<long> tri = {1, 1, 2, 4, 7, 13, 24, 44, 81, 149};
  for (std::size_t i = 0; i < tri.size(); ++i) {
    CHECK(t.at(static_cast<long>(i) + 1) == tri[i]);
  }
  CHECK(t.at(20) == 66012);
  CHECK(t.at(-1) == 0);
  CHECK(t.at(0) == 0);

  SequenceCache q(4);
  std::vector<long> tet = {1, 1, 2, 4, 8, 15, 29, 56, 108, 208};
  for (std::size_t i = 0; i < tet.size(); ++i) {
    CHECK(q.at(static_cast<long>(i) + 1) == tet[i]);
  }
}

TEST_CASE("the k+1-st term is a power of two") {
  for (int k = 2; k <= 12; ++k) {
    SequenceCache f(k);
    CHECK(f.at(k + 1) == mpz_class(1) << (k - 1));
  }
}

TEST_CASE("window sum identity holds deep into the sequence") {
  for (int k : {2, 3, 5, 9}) {
    SequenceCache f(k);
    for (long n = 40; n <= 45; ++n) {
      mpz_class sum = 0;
      for (int j = 1; j <= k; ++j) sum += f.at(n - j);
      CHECK(f.at(n) == sum);
    }
  }
}

TEST_CASE("index range errors") {
  SequenceCache f(5);  // indices start at -(k-2) = -3
  CHECK(f.at(-3) == 0);
  CHECK_THROWS_AS(f.at(-4), std::invalid_argument);

  const SequenceCache& cf = f;
  CHECK_THROWS_AS(cf.at(1000), std::logic_error);
  f.materialize(1000);
  CHECK_NOTHROW(cf.at(1000));
}

TEST_CASE("membership finds the smallest index") {
  SequenceCache f(2);
  CHECK(f.membership(mpz_class(1)) == 1);  // 1 = F_1 = F_2; smallest wins
  CHECK(f.membership(mpz_class(2)) == 3);
  CHECK(f.membership(mpz_class(55)) == 10);
  CHECK(f.membership(mpz_class(832040)) == 30);
  CHECK_FALSE(f.membership(mpz_class(4)).has_value());
  CHECK_FALSE(f.membership(mpz_class(0)).has_value());
  CHECK_FALSE(f.membership(mpz_class(-8)).has_value());

  SequenceCache t(3);
  CHECK(t.membership(mpz_class(24)) == 7);
  CHECK_FALSE(t.membership(mpz_class(25)).has_value());
}

TEST_CASE("free helpers agree with the cache") {
  CHECK(kfib(2, 10) == 55);
  CHECK(kfib(3, 7) == 24);
  CHECK(kfib(5, -3) == 0);
  CHECK(membership(2, mpz_class(100)) == std::nullopt);
  CHECK(membership(4, mpz_class(208)) == 10);
}

TEST_CASE("terms grow without bound and membership scales") {
  SequenceCache f(7);
  mpz_class big = f.at(300);
  CHECK(f.membership(big) == 300);
  CHECK_FALSE(f.membership(big - 1).has_value());
}
