#pragma once
// Outward-rounded interval arithmetic over MPFR.
//
// RealInterval is a closed interval [lo, hi] whose endpoints are MPFR
// numbers at a fixed precision. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the result encloses the
// exact image of the inputs. Comparisons are "certified": they return
// true only when the relation holds for every point of the enclosures,
// and the two-sided decision helpers throw undecidable_comparison when
// the enclosures overlap, so callers can rerun at higher precision
// (see with_precision at the bottom of this header).
//
// ComplexBox is an axis-aligned rectangle (a pair of RealIntervals);
// rectangle arithmetic keeps the same containment guarantee.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

namespace kdioph {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kPrecisionCap = 8192;

// A certified comparison could not be decided at the current precision.
// Retryable: rerun the computation with more bits.
class undecidable_comparison : public std::runtime_error {
 public:
  explicit undecidable_comparison(const std::string& what)
      : std::runtime_error(what) {}
};

// The precision-doubling policy hit the cap without reaching a decision.
class precision_fault : public std::runtime_error {
 public:
  explicit precision_fault(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

// RAII wrapper for a single mpfr_t.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpfrValue(const MpfrValue& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }
  MpfrValue(MpfrValue&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  MpfrValue& operator=(const MpfrValue& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpfrValue& operator=(MpfrValue&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpfrValue() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

inline std::string format_mpfr(mpfr_srcptr x, int significant_digits) {
  significant_digits = std::max(significant_digits, 2);
  std::string buf(static_cast<std::size_t>(significant_digits) + 48, '\0');
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", significant_digits - 1, x);
  buf.resize(std::strlen(buf.c_str()));
  return buf;
}

}  // namespace detail

class RealInterval {
 public:
  // [0, 0] at the given precision.
  explicit RealInterval(mpfr_prec_t prec = kDefaultPrecision)
      : lo_(prec), hi_(prec) {}

  static RealInterval point(long v, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
  }
  static RealInterval point(const mpz_class& v, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval of_rational(const mpq_class& q, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval of_rational_endpoints(const mpq_class& lo,
                                            const mpq_class& hi,
                                            mpfr_prec_t prec) {
    assert(mpq_cmp(lo.get_mpq_t(), hi.get_mpq_t()) <= 0);
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  // Exact point interval at x (kept at x's own precision).
  static RealInterval of_mpfr(mpfr_srcptr x) {
    RealInterval r(mpfr_get_prec(x));
    mpfr_set(r.lo_.get(), x, MPFR_RNDN);
    mpfr_set(r.hi_.get(), x, MPFR_RNDN);
    return r;
  }
  static RealInterval of_mpfr_endpoints(mpfr_srcptr lo, mpfr_srcptr hi,
                                        mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi, MPFR_RNDU);
    assert(mpfr_cmp(r.lo_.get(), r.hi_.get()) <= 0);
    return r;
  }

  mpfr_prec_t precision() const { return lo_.prec(); }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }
  double lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double mid_double() const { return 0.5 * (lo_double() + hi_double()); }

  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
  }
  bool contains(const mpz_class& v) const {
    return mpfr_cmp_z(lo_.get(), v.get_mpz_t()) <= 0 &&
           mpfr_cmp_z(hi_.get(), v.get_mpz_t()) >= 0;
  }
  bool contains(const mpq_class& v) const {
    return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
  }
  bool contains(const RealInterval& inner) const {
    return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 &&
           mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
  }

  bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_.get()) < 0; }

  // Certain order relations: true only when they hold pointwise.
  bool strictly_below(const RealInterval& o) const {
    return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
  }
  bool strictly_above(const RealInterval& o) const {
    return mpfr_cmp(lo_.get(), o.hi_.get()) > 0;
  }
  bool strictly_below(const mpz_class& v) const {
    return mpfr_cmp_z(hi_.get(), v.get_mpz_t()) < 0;
  }
  bool strictly_above(const mpz_class& v) const {
    return mpfr_cmp_z(lo_.get(), v.get_mpz_t()) > 0;
  }
  bool strictly_below(const mpq_class& v) const {
    return mpfr_cmp_q(hi_.get(), v.get_mpq_t()) < 0;
  }
  bool strictly_above(const mpq_class& v) const {
    return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) > 0;
  }
  // a < lo and hi < b (open-interval membership of the whole enclosure).
  bool strictly_inside(const mpq_class& a, const mpq_class& b) const {
    return strictly_above(a) && strictly_below(b);
  }

  // Decides lhs < rhs, throwing when the enclosures overlap.
  static bool certify_less(const RealInterval& lhs, const RealInterval& rhs) {
    if (mpfr_cmp(lhs.hi(), rhs.lo()) < 0) return true;   // < everywhere
    if (mpfr_cmp(rhs.hi(), lhs.lo()) <= 0) return false; // >= everywhere
    throw undecidable_comparison("order of overlapping enclosures");
  }

  RealInterval width() const {
    RealInterval r(precision());
    mpfr_sub(r.hi_.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_set(r.lo_.get(), r.hi_.get(), MPFR_RNDN);
    return r;
  }
  RealInterval mid() const {
    RealInterval r(precision());
    mpfr_add(r.lo_.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(r.lo_.get(), r.lo_.get(), 1, MPFR_RNDN);
    mpfr_set(r.hi_.get(), r.lo_.get(), MPFR_RNDN);
    return r;
  }

  std::string midpoint_string(int significant = 30) const {
    return detail::format_mpfr(mid().lo(), significant);
  }
  std::string radius_string() const {
    detail::MpfrValue rad(precision());
    mpfr_sub(rad.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_div_2ui(rad.get(), rad.get(), 1, MPFR_RNDU);
    return detail::format_mpfr(rad.get(), 3);
  }
  std::string lo_string(int significant = 30) const {
    return detail::format_mpfr(lo_.get(), significant);
  }
  std::string hi_string(int significant = 30) const {
    return detail::format_mpfr(hi_.get(), significant);
  }

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    RealInterval r(join(a, b));
    mpfr_add(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    RealInterval r(join(a, b));
    mpfr_sub(r.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator-(const RealInterval& a) {
    RealInterval r(a.precision());
    mpfr_neg(r.lo_.get(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    mpfr_prec_t p = join(a, b);
    RealInterval r(p);
    detail::MpfrValue t(p);
    // Lower endpoint: minimum of the four products, each rounded down.
    mpfr_mul(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_mul(t.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_mul(t.get(), a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    // Upper endpoint: maximum of the four, rounded up.
    mpfr_mul(r.hi_.get(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_mul(t.get(), a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    return r;
  }
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) {
      throw undecidable_comparison("division by an interval containing zero");
    }
    mpfr_prec_t p = join(a, b);
    RealInterval r(p);
    detail::MpfrValue t(p);
    mpfr_div(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_div(t.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), a.hi(), b.lo(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_div(t.get(), a.hi(), b.hi(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), r.lo_.get(), t.get(), MPFR_RNDD);
    mpfr_div(r.hi_.get(), a.lo(), b.lo(), MPFR_RNDU);
    mpfr_div(t.get(), a.lo(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    mpfr_div(t.get(), a.hi(), b.lo(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    mpfr_div(t.get(), a.hi(), b.hi(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), r.hi_.get(), t.get(), MPFR_RNDU);
    return r;
  }

  friend RealInterval abs(const RealInterval& a) {
    RealInterval r(a.precision());
    if (a.strictly_positive()) return a;
    if (mpfr_sgn(a.hi()) <= 0) return -a;
    // Straddles zero: [0, max(|lo|, |hi|)].
    mpfr_set_zero(r.lo_.get(), 1);
    detail::MpfrValue t(a.precision());
    mpfr_neg(t.get(), a.lo(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), t.get(), a.hi(), MPFR_RNDU);
    return r;
  }
  friend RealInterval sqrt(const RealInterval& a) {
    if (mpfr_sgn(a.hi()) < 0) {
      throw std::domain_error("sqrt of a negative interval");
    }
    RealInterval r(a.precision());
    if (mpfr_sgn(a.lo()) > 0) {
      mpfr_sqrt(r.lo_.get(), a.lo(), MPFR_RNDD);
    } else {
      mpfr_set_zero(r.lo_.get(), 1);
    }
    mpfr_sqrt(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }
  friend RealInterval rootn(const RealInterval& a, unsigned long n) {
    if (mpfr_sgn(a.hi()) < 0) {
      throw std::domain_error("rootn of a negative interval");
    }
    RealInterval r(a.precision());
    if (mpfr_sgn(a.lo()) > 0) {
      mpfr_rootn_ui(r.lo_.get(), a.lo(), n, MPFR_RNDD);
    } else {
      mpfr_set_zero(r.lo_.get(), 1);
    }
    mpfr_rootn_ui(r.hi_.get(), a.hi(), n, MPFR_RNDU);
    return r;
  }
  friend RealInterval log(const RealInterval& a) {
    if (mpfr_sgn(a.hi()) <= 0) {
      throw std::domain_error("log of a nonpositive interval");
    }
    if (mpfr_sgn(a.lo()) <= 0) {
      // A positive quantity whose enclosure dips to zero: retryable.
      throw undecidable_comparison("log of an enclosure touching zero");
    }
    RealInterval r(a.precision());
    mpfr_log(r.lo_.get(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi(), MPFR_RNDU);
    return r;
  }
  friend RealInterval pow_si(const RealInterval& a, long e) {
    mpfr_prec_t p = a.precision();
    if (e == 0) return point(1, p);
    if (e < 0) {
      RealInterval y = pow_si(a, -e);
      if (y.contains_zero()) {
        throw undecidable_comparison("inverse of an interval containing zero");
      }
      RealInterval r(p);
      mpfr_si_div(r.lo_.get(), 1, y.hi(), MPFR_RNDD);
      mpfr_si_div(r.hi_.get(), 1, y.lo(), MPFR_RNDU);
      return r;
    }
    unsigned long n = static_cast<unsigned long>(e);
    RealInterval r(p);
    if ((n % 2) == 1 || mpfr_sgn(a.lo()) >= 0) {
      // Monotone increasing on the whole line (odd) or on [0, inf).
      mpfr_pow_ui(r.lo_.get(), a.lo(), n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_.get(), a.hi(), n, MPFR_RNDU);
    } else if (mpfr_sgn(a.hi()) <= 0) {
      // Even power of a nonpositive interval: decreasing.
      mpfr_pow_ui(r.lo_.get(), a.hi(), n, MPFR_RNDD);
      mpfr_pow_ui(r.hi_.get(), a.lo(), n, MPFR_RNDU);
    } else {
      // Even power straddling zero: [0, max(|lo|, |hi|)^n].
      mpfr_set_zero(r.lo_.get(), 1);
      detail::MpfrValue t(p);
      mpfr_neg(t.get(), a.lo(), MPFR_RNDU);
      mpfr_max(t.get(), t.get(), a.hi(), MPFR_RNDU);
      mpfr_pow_ui(r.hi_.get(), t.get(), n, MPFR_RNDU);
    }
    return r;
  }
  // Exact scaling by 2^e.
  friend RealInterval scale2(const RealInterval& a, long e) {
    RealInterval r(a.precision());
    mpfr_mul_2si(r.lo_.get(), a.lo(), e, MPFR_RNDD);
    mpfr_mul_2si(r.hi_.get(), a.hi(), e, MPFR_RNDU);
    return r;
  }

  // Enclosure of min(x, y) over the two enclosures (endpointwise min).
  friend RealInterval min(const RealInterval& a, const RealInterval& b) {
    RealInterval r(join(a, b));
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }
  friend RealInterval hull(const RealInterval& a, const RealInterval& b) {
    RealInterval r(join(a, b));
    mpfr_min(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }
  friend bool intersects(const RealInterval& a, const RealInterval& b) {
    return mpfr_cmp(a.hi(), b.lo()) >= 0 && mpfr_cmp(b.hi(), a.lo()) >= 0;
  }
  friend RealInterval intersection(const RealInterval& a,
                                   const RealInterval& b) {
    if (!intersects(a, b)) {
      throw std::invalid_argument("intersection of disjoint intervals");
    }
    RealInterval r(join(a, b));
    mpfr_max(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
  }

  friend RealInterval operator+(const RealInterval& a, long b) {
    return a + point(b, a.precision());
  }
  friend RealInterval operator+(long a, const RealInterval& b) {
    return point(a, b.precision()) + b;
  }
  friend RealInterval operator-(const RealInterval& a, long b) {
    return a - point(b, a.precision());
  }
  friend RealInterval operator-(long a, const RealInterval& b) {
    return point(a, b.precision()) - b;
  }
  friend RealInterval operator*(const RealInterval& a, long b) {
    return a * point(b, a.precision());
  }
  friend RealInterval operator*(long a, const RealInterval& b) {
    return point(a, b.precision()) * b;
  }
  friend RealInterval operator/(const RealInterval& a, long b) {
    return a / point(b, a.precision());
  }

 private:
  static mpfr_prec_t join(const RealInterval& a, const RealInterval& b) {
    return std::max(a.precision(), b.precision());
  }

  detail::MpfrValue lo_, hi_;
};

// Axis-aligned rectangle in the complex plane.
class ComplexBox {
 public:
  explicit ComplexBox(mpfr_prec_t prec = kDefaultPrecision)
      : re_(prec), im_(prec) {}
  ComplexBox(RealInterval re, RealInterval im)
      : re_(std::move(re)), im_(std::move(im)) {}

  static ComplexBox from_real(const RealInterval& re) {
    return ComplexBox(re, RealInterval(re.precision()));
  }
  static ComplexBox real_point(long v, mpfr_prec_t prec) {
    return ComplexBox(RealInterval::point(v, prec), RealInterval(prec));
  }
  static ComplexBox point(mpfr_srcptr re, mpfr_srcptr im) {
    return ComplexBox(RealInterval::of_mpfr(re), RealInterval::of_mpfr(im));
  }

  const RealInterval& re() const { return re_; }
  const RealInterval& im() const { return im_; }
  mpfr_prec_t precision() const {
    return std::max(re_.precision(), im_.precision());
  }

  ComplexBox conj() const { return ComplexBox(re_, -im_); }
  RealInterval modulus_squared() const {
    return pow_si(re_, 2) + pow_si(im_, 2);
  }
  RealInterval modulus() const { return sqrt(modulus_squared()); }

  bool contains_zero() const {
    return re_.contains_zero() && im_.contains_zero();
  }
  bool contains_real(const mpz_class& v) const {
    return im_.contains_zero() && re_.contains(v);
  }
  bool contains(const ComplexBox& inner) const {
    return re_.contains(inner.re_) && im_.contains(inner.im_);
  }

  double center_re_double() const { return re_.mid_double(); }
  double center_im_double() const { return im_.mid_double(); }
  std::string center_re_string(int significant = 30) const {
    return re_.midpoint_string(significant);
  }
  std::string center_im_string(int significant = 30) const {
    return im_.midpoint_string(significant);
  }
  // Upper bound on the distance from the box center to any box point.
  std::string radius_string() const {
    mpfr_prec_t p = precision();
    detail::MpfrValue wr(p), wi(p);
    mpfr_sub(wr.get(), re_.hi(), re_.lo(), MPFR_RNDU);
    mpfr_sub(wi.get(), im_.hi(), im_.lo(), MPFR_RNDU);
    mpfr_hypot(wr.get(), wr.get(), wi.get(), MPFR_RNDU);
    mpfr_div_2ui(wr.get(), wr.get(), 1, MPFR_RNDU);
    return detail::format_mpfr(wr.get(), 3);
  }

  friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ + b.re_, a.im_ + b.im_);
  }
  friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ - b.re_, a.im_ - b.im_);
  }
  friend ComplexBox operator-(const ComplexBox& a) {
    return ComplexBox(-a.re_, -a.im_);
  }
  friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return ComplexBox(a.re_ * b.re_ - a.im_ * b.im_,
                      a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend ComplexBox operator*(const ComplexBox& a, const RealInterval& b) {
    return ComplexBox(a.re_ * b, a.im_ * b);
  }
  friend ComplexBox operator*(const RealInterval& a, const ComplexBox& b) {
    return b * a;
  }
  friend ComplexBox operator/(const ComplexBox& a, const RealInterval& b) {
    return ComplexBox(a.re_ / b, a.im_ / b);
  }
  friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
    RealInterval d = b.modulus_squared();
    ComplexBox n = a * b.conj();
    return ComplexBox(n.re_ / d, n.im_ / d);
  }
  friend ComplexBox pow_ui(const ComplexBox& a, unsigned long e) {
    ComplexBox result = real_point(1, a.precision());
    ComplexBox base = a;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      base = base * base;
      e >>= 1UL;
    }
    return result;
  }

 private:
  RealInterval re_, im_;
};

inline ComplexBox pow_si(const ComplexBox& a, long e) {
  if (e >= 0) return pow_ui(a, static_cast<unsigned long>(e));
  return ComplexBox::real_point(1, a.precision()) /
         pow_ui(a, static_cast<unsigned long>(-e));
}

// Runs f(bits), doubling bits whenever a comparison is undecidable,
// until the cap; then converts the failure into a hard precision_fault.
template <typename F>
auto with_precision(F&& f, mpfr_prec_t start = kDefaultPrecision)
    -> decltype(f(start)) {
  mpfr_prec_t bits = std::max<mpfr_prec_t>(start, MPFR_PREC_MIN);
  for (;;) {
    try {
      return f(bits);
    } catch (const undecidable_comparison& e) {
      if (bits >= kPrecisionCap) {
        throw precision_fault(std::string("undecidable at the ") +
                              std::to_string(kPrecisionCap) +
                              "-bit precision cap: " + e.what());
      }
      bits = std::min<mpfr_prec_t>(bits * 2, kPrecisionCap);
    }
  }
}

}  // namespace kdioph
