#include <kdioph/bigint.hpp>
#include <kdioph/squares.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

using namespace kdioph;

TEST_CASE("integer square root and perfect square detection") {
  CHECK(isqrt(mpz_class(0)) == 0);
  CHECK(isqrt(mpz_class(1)) == 1);
  CHECK(isqrt(mpz_class(8)) == 2);
  CHECK(isqrt(mpz_class(9)) == 3);
  CHECK_THROWS_AS(isqrt(mpz_class(-1)), std::domain_error);

  mpz_class big = mpz_class("10000000000000000000000000000000000000000000000001");
  mpz_class square = big * big;
  CHECK(isqrt(square) == big);
  CHECK(isqrt(square - 1) == big - 1);

  for (long n = 0; n <= 5000; ++n) {
    mpz_class v(n);
    SquareTestResult r = is_perfect_square(v);
    mpz_class root = isqrt(v);
    CHECK(r.is_square == (root * root == v));
    REQUIRE(r.floor_sqrt.has_value());
    CHECK(*r.floor_sqrt == root);
  }
  CHECK_FALSE(is_perfect_square(mpz_class(-4)).is_square);
}

TEST_CASE("residue prefilter never rejects a square") {
  for (long n = 0; n <= 20000; ++n) {
    mpz_class sq = mpz_class(n) * n;
    CHECK(square_residue_admissible(sq));
  }
  // And the fast path agrees with GMP's test on a mixed range.
  for (long n = 50000; n < 51000; ++n) {
    mpz_class v(n);
    CHECK(is_square_fast(v) ==
          (mpz_perfect_square_p(v.get_mpz_t()) != 0));
  }
}

TEST_CASE("discriminant spot values") {
  // D(k) = 2^(k+1) k^k - (k+1)^(k+1)
  CHECK(discriminant(2) == 5);
  CHECK(discriminant(3) == 176);
  CHECK(discriminant(4) == 5067);
  CHECK(discriminant(5) == 153344);
  CHECK(discriminant(6) == 5148425);
  // Independent evaluation via plain big-int exponentiation.
  for (int k = 2; k <= 40; ++k) {
    mpz_class direct =
        pow_z(mpz_class(2), static_cast<unsigned long>(k + 1)) *
            pow_z(mpz_class(k), static_cast<unsigned long>(k)) -
        pow_z(mpz_class(k + 1), static_cast<unsigned long>(k + 1));
    CHECK(discriminant(k) == direct);
  }
}

TEST_CASE("discriminants are positive and never perfect squares") {
  auto records = square_scan(300, 2);
  REQUIRE(records.size() == 299);
  for (const SquareScanRecord& r : records) {
    INFO("k=" << r.k);
    CHECK(r.discriminant_value > 0);
    CHECK_FALSE(r.is_square);
    CHECK(r.witness_ok);
    CHECK(r.floor_sqrt * r.floor_sqrt < r.discriminant_value);
    CHECK((r.floor_sqrt + 1) * (r.floor_sqrt + 1) > r.discriminant_value);
  }
}

TEST_CASE("witness kinds follow k mod 4") {
  auto records = square_scan(30, 2);
  for (const SquareScanRecord& r : records) {
    INFO("k=" << r.k);
    if (r.k % 4 == 0) {
      CHECK(r.witness.kind == WitnessKind::kMod4);
      CHECK(r.witness.d_mod4 == 3);
    } else if (r.k % 4 == 3) {
      CHECK(r.witness.kind == WitnessKind::kTwoSquares);
      CHECK(r.witness.p % 4 == 3);
      CHECK(r.k % r.witness.p == 0);
      CHECK(r.witness.gcd_ok);
      CHECK_FALSE(r.witness.residual_is_square);
    } else {
      CHECK(r.witness.kind == WitnessKind::kExternal);
    }
    CHECK(r.witness.valid(r.k));
  }
}

TEST_CASE("two-squares witness details for k = 3") {
  ResidueWitness w = residue_witness(3);
  REQUIRE(w.kind == WitnessKind::kTwoSquares);
  CHECK(w.p == 3);
  // residual = k^k - ((k+1)/2)^(k+1) = 27 - 16 = 11.
  CHECK(w.residual == 11);
  CHECK_FALSE(w.residual_is_square);
  CHECK(w.gcd_ok);
  CHECK(w.valid(3));

  ResidueWitness w7 = residue_witness(7);
  REQUIRE(w7.kind == WitnessKind::kTwoSquares);
  CHECK(w7.p == 7);
  // 7^7 - 4^8 = 823543 - 65536 = 758007.
  CHECK(w7.residual == 758007);
}

TEST_CASE("witness kind names are stable") {
  CHECK(std::string(witness_kind_name(WitnessKind::kMod4)) == "mod4");
  CHECK(std::string(witness_kind_name(WitnessKind::kTwoSquares)) ==
        "two-squares");
  CHECK(std::string(witness_kind_name(WitnessKind::kExternal)) == "external");
}

TEST_CASE("norm identities across orders") {
  for (int k = 2; k <= 12; ++k) {
    NormIdentityRecord rec = verify_norm_identities(k);
    INFO("k=" << k);
    CHECK(rec.ok);
    CHECK(rec.norm_alpha == 1);
    CHECK(rec.norm_alpha_minus_1 == k - 1);
    mpq_class expected(discriminant(k), mpz_class(k - 1));
    expected.canonicalize();
    CHECK(rec.norm_form == expected);
  }
}

TEST_CASE("norm-discriminant link at k = 2 and 3") {
  // k=2: |N(3 alpha - 4)| = 5 = D(2); k=3: |N(4 alpha - 6)| = 88 =
  // D(3)/2.
  CHECK(verify_norm_identities(2).norm_form == 5);
  CHECK(verify_norm_identities(3).norm_form == 88);
  CHECK(discriminant(3) == 2 * 88);
}
