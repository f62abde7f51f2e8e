#pragma once
// Certified growth and residual facts for the k-step sequences:
//   - the dominant root lies in the open window (2 - 1/k, 2);
//   - alpha_1^{n-2} < F_n < alpha_1^{n-1} for n >= 3 (the lower bound
//     degenerates to equality at n = 2, reported informationally);
//   - |F_n - f_1 alpha_1^n| < 1/2 for n >= 1;
//   - gcd(F_x - 1, F_y - 1) < alpha_1^{k x/(k+1)} for 3 <= y < x.
// Every check compares an exact integer against a certified enclosure;
// an undecidable comparison triggers the precision-doubling policy.

#include <kdioph/charpoly.hpp>
#include <kdioph/interval.hpp>
#include <kdioph/sequence.hpp>

#include <stdexcept>
#include <vector>

namespace kdioph {

namespace detail {

// Decide x < v / x > v for exact integer v, throwing when undecided.
inline bool decide_below(const RealInterval& x, const mpz_class& v) {
  if (x.strictly_below(v)) return true;
  if (mpfr_cmp_z(x.lo(), v.get_mpz_t()) >= 0) return false;
  throw undecidable_comparison("enclosure-vs-integer order undecided");
}

inline bool decide_above(const RealInterval& x, const mpz_class& v) {
  if (x.strictly_above(v)) return true;
  if (mpfr_cmp_z(x.hi(), v.get_mpz_t()) <= 0) return false;
  throw undecidable_comparison("enclosure-vs-integer order undecided");
}

// Decide whether x lies in the open interval (a, b).
inline bool decide_inside(const RealInterval& x, const mpq_class& a,
                          const mpq_class& b) {
  if (x.strictly_inside(a, b)) return true;
  if (mpfr_cmp_q(x.lo(), b.get_mpq_t()) >= 0 ||
      mpfr_cmp_q(x.hi(), a.get_mpq_t()) <= 0) {
    return false;
  }
  throw undecidable_comparison("open-interval membership undecided");
}

// f_1 over the dominant-root enclosure alone (the full root set is not
// needed for dominant-term work).
inline RealInterval f1_from_dominant(int k, const RealInterval& alpha) {
  RealInterval f1 = ((alpha - 1L) / alpha) /
                    (2L + (alpha - 2L) * static_cast<long>(k + 1));
  if (!f1.strictly_inside(mpq_class(0), mpq_class(1))) {
    throw undecidable_comparison("leading coefficient enclosure too wide");
  }
  return f1;
}

}  // namespace detail

struct RootWindowRecord {
  int k = 0;
  RealInterval dominant;
  bool ok = false;  // certified inside the open window (2 - 1/k, 2)
};

inline RootWindowRecord verify_root_window(int k,
                                           mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  return with_precision(
      [k](mpfr_prec_t b) {
        RootWindowRecord rec;
        rec.k = k;
        rec.dominant = dominant_root(k, b);
        rec.ok = detail::decide_inside(
            rec.dominant, mpq_class(2L * k - 1, static_cast<unsigned long>(k)),
            mpq_class(2));
        return rec;
      },
      bits);
}

struct SizeBoundRecord {
  int k = 0;
  long n = 0;
  bool lower_ok = false;  // alpha_1^{n-2} < F_n
  bool upper_ok = false;  // F_n < alpha_1^{n-1}
  bool ok = false;
  bool informational = false;  // n == 2 boundary case, excluded from assertions
};

inline std::vector<SizeBoundRecord> verify_size_bounds(
    int k, long n_max, mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  if (n_max < 2) {
    throw std::invalid_argument("size-bound scan needs n_max >= 2");
  }
  return with_precision(
      [k, n_max](mpfr_prec_t b) {
        std::vector<SizeBoundRecord> out;
        out.reserve(static_cast<std::size_t>(n_max - 1));
        RealInterval alpha = dominant_root(k, b);
        SequenceCache cache(k);
        cache.materialize(n_max);
        for (long n = 2; n <= n_max; ++n) {
          const mpz_class& f = cache.at(n);
          SizeBoundRecord rec;
          rec.k = k;
          rec.n = n;
          rec.informational = (n == 2);
          rec.lower_ok = detail::decide_below(pow_si(alpha, n - 2), f);
          rec.upper_ok = detail::decide_above(pow_si(alpha, n - 1), f);
          rec.ok = rec.lower_ok && rec.upper_ok;
          out.push_back(rec);
        }
        return out;
      },
      bits);
}

struct BinetResidualRecord {
  int k = 0;
  long n = 0;
  RealInterval residual;  // F_n - f_1 alpha_1^n
  bool ok = false;        // certified inside (-1/2, 1/2)
  bool informational = false;  // n == 0 probe, outside the guaranteed range
};

inline std::vector<BinetResidualRecord> verify_binet_residuals(
    int k, long n_max, mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  if (n_max < 1) {
    throw std::invalid_argument("residual scan needs n_max >= 1");
  }
  return with_precision(
      [k, n_max](mpfr_prec_t b) {
        std::vector<BinetResidualRecord> out;
        out.reserve(static_cast<std::size_t>(n_max) + 1);
        RealInterval alpha = dominant_root(k, b);
        RealInterval f1 = detail::f1_from_dominant(k, alpha);
        SequenceCache cache(k);
        cache.materialize(n_max);
        const mpq_class neg_half(-1, 2), half(1, 2);
        for (long n = 0; n <= n_max; ++n) {
          BinetResidualRecord rec;
          rec.k = k;
          rec.n = n;
          rec.informational = (n == 0);
          rec.residual = RealInterval::point(cache.at(n), b) -
                         f1 * pow_si(alpha, n);
          if (rec.residual.strictly_inside(neg_half, half)) {
            rec.ok = true;
          } else if (mpfr_cmp_q(rec.residual.lo(), half.get_mpq_t()) >= 0 ||
                     mpfr_cmp_q(rec.residual.hi(), neg_half.get_mpq_t()) <=
                         0) {
            rec.ok = false;
          } else {
            throw undecidable_comparison("residual enclosure too wide");
          }
          out.push_back(rec);
        }
        return out;
      },
      bits);
}

struct GcdScanRecord {
  int k = 0;
  long x = 0, y = 0;
  mpz_class gcd_value;
  RealInterval bound;  // alpha_1^{k x / (k+1)}
  bool ok = false;     // gcd_value below the whole bound enclosure
};

// Scans all pairs 3 <= y < x <= x_max. Failures are recorded, never
// thrown: the bound is an inequality claim, not a precondition.
inline std::vector<GcdScanRecord> gcd_scan(int k, long x_max,
                                           mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  if (x_max < 4) {
    throw std::invalid_argument("gcd scan needs x_max >= 4");
  }
  RealInterval alpha = with_precision(
      [k](mpfr_prec_t b) { return dominant_root(k, b); }, bits);
  SequenceCache cache(k);
  cache.materialize(x_max);
  std::vector<GcdScanRecord> out;
  out.reserve(static_cast<std::size_t>(x_max) * static_cast<std::size_t>(x_max) / 2);
  for (long x = 4; x <= x_max; ++x) {
    RealInterval bound =
        rootn(pow_si(alpha, k * x), static_cast<unsigned long>(k) + 1);
    mpz_class fx1 = cache.at(x) - 1;
    for (long y = 3; y < x; ++y) {
      GcdScanRecord rec;
      rec.k = k;
      rec.x = x;
      rec.y = y;
      rec.gcd_value = gcd(fx1, mpz_class(cache.at(y) - 1));
      rec.bound = bound;
      rec.ok = rec.bound.strictly_above(rec.gcd_value);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace kdioph
