#include <kdioph/bounds.hpp>
#include <kdioph/sequence.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

using namespace kdioph;

TEST_CASE("dominant root window certificate") {
  for (int k = 2; k <= 40; ++k) {
    RootWindowRecord rec = verify_root_window(k, 128);
    CHECK(rec.k == k);
    CHECK(rec.ok);
    CHECK(rec.dominant.strictly_above(mpq_class(2 * k - 1, k)));
    CHECK(rec.dominant.strictly_below(mpq_class(2)));
  }
}

TEST_CASE("size bounds hold strictly from n = 3") {
  for (int k : {2, 3, 4, 6}) {
    auto records = verify_size_bounds(k, 80, 128);
    REQUIRE_FALSE(records.empty());
    CHECK(records.front().n == 2);
    CHECK(records.front().informational);
    // At n = 2 the lower bound degenerates to equality (F_2 = 1 =
    // alpha^0), so the strict reading fails there by design.
    CHECK_FALSE(records.front().lower_ok);
    CHECK(records.front().upper_ok);
    for (const SizeBoundRecord& r : records) {
      if (r.informational) continue;
      CHECK(r.n >= 3);
      CHECK(r.lower_ok);
      CHECK(r.upper_ok);
      CHECK(r.ok);
    }
    CHECK(records.back().n == 80);
  }
}

TEST_CASE("size bounds reproduce by direct interval comparison") {
  int k = 3;
  RealInterval alpha = verify_root_window(k, 160).dominant;
  SequenceCache f(k);
  for (long n : {3L, 10L, 37L}) {
    mpz_class fn = f.at(n);
    CHECK(pow_si(alpha, n - 2).strictly_below(fn));
    CHECK(pow_si(alpha, n - 1).strictly_above(fn));
  }
}

TEST_CASE("dominant-term residuals stay below one half") {
  for (int k : {2, 3, 5}) {
    auto records = verify_binet_residuals(k, 120, 128);
    REQUIRE(records.size() == 121);  // n = 0..120
    CHECK(records.front().n == 0);
    CHECK(records.front().informational);
    for (const BinetResidualRecord& r : records) {
      if (r.informational) continue;
      INFO("k=" << k << " n=" << r.n);
      CHECK(r.ok);
      CHECK(abs(r.residual).strictly_below(mpq_class(1, 2)));
    }
  }
}

TEST_CASE("residual magnitudes shrink geometrically") {
  auto records = verify_binet_residuals(2, 60, 160);
  // |F_n - f1 phi^n| = |f2 psi^n| -> 0; compare a late residual against
  // an early one.
  RealInterval early = abs(records[5].residual);
  RealInterval late = abs(records[60].residual);
  CHECK(late.strictly_below(mpq_class(1, 1000000)));
  CHECK(mpfr_cmp(late.hi(), early.lo()) < 0);
}

TEST_CASE("gcd scan certifies the growth bound") {
  for (int k : {2, 3, 4}) {
    auto records = gcd_scan(k, 40, 128);
    // pairs 3 <= y < x <= 40: C(38, 2)
    CHECK(records.size() == 38u * 37u / 2u);
    for (const GcdScanRecord& r : records) {
      INFO("k=" << k << " x=" << r.x << " y=" << r.y);
      CHECK(r.ok);
      CHECK(r.x > r.y);
      CHECK(r.y >= 3);
    }
  }
}

TEST_CASE("gcd scan records match a direct gcd computation") {
  SequenceCache f(2);
  auto records = gcd_scan(2, 12, 128);
  for (const GcdScanRecord& r : records) {
    mpz_class gx = f.at(r.x) - 1, gy = f.at(r.y) - 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), gx.get_mpz_t(), gy.get_mpz_t());
    CHECK(r.gcd_value == g);
    // Bound alpha^(k x / (k+1)) must exceed the gcd.
    CHECK(r.bound.strictly_above(g));
  }
  // Spot values: gcd(F_4 - 1, F_3 - 1) = gcd(2, 1) = 1,
  // gcd(F_5 - 1, F_4 - 1) = gcd(4, 2) = 2.
  bool saw43 = false, saw54 = false;
  for (const GcdScanRecord& r : records) {
    if (r.x == 4 && r.y == 3) {
      saw43 = true;
      CHECK(r.gcd_value == 1);
    }
    if (r.x == 5 && r.y == 4) {
      saw54 = true;
      CHECK(r.gcd_value == 2);
    }
  }
  CHECK(saw43);
  CHECK(saw54);
}

TEST_CASE("bound argument validation") {
  CHECK_THROWS_AS(verify_size_bounds(2, 1, 128), std::invalid_argument);
  CHECK_THROWS_AS(verify_binet_residuals(2, 0, 128), std::invalid_argument);
  CHECK_THROWS_AS(gcd_scan(2, 3, 128), std::invalid_argument);
  CHECK_THROWS_AS(verify_root_window(1, 128), std::invalid_argument);
}
