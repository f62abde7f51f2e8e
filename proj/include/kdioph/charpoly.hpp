#pragma once
// The characteristic polynomial of the k-step Fibonacci recurrence,
//
//   psi_k(X) = X^k - X^{k-1} - ... - X - 1
//            = (X^{k+1} - 2 X^k + 1) / (X - 1),
//
// has one simple root alpha_1 in the window (2 - 1/k, 2); the other
// k - 1 roots lie strictly inside the unit circle. This header provides
// evaluation (exact rational and enclosure forms), certified root
// enclosures, the power-sum coefficients f_i with
// F_n = sum_i f_i alpha_i^n, and exact norms of integer linear forms
// p*alpha - q over the root set.

#include <kdioph/bigint.hpp>
#include <kdioph/interval.hpp>
#include <kdioph/sequence.hpp>

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kdioph {

inline mpq_class pow_q(const mpq_class& x, unsigned long e) {
  // Componentwise powers stay canonical: gcd(n,d)=1 implies gcd(n^e,d^e)=1.
  mpq_class r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(x.get_mpq_t()), e);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(x.get_mpq_t()), e);
  return r;
}

// Exact rational evaluation of psi_k.
inline mpq_class psi_eval_exact(int k, const mpq_class& x) {
  require_order(k);
  if (x == 1) return mpq_class(1 - k);  // limit value of the rational form
  mpq_class xk = pow_q(x, static_cast<unsigned long>(k));
  mpq_class num = xk * x - 2 * xk + 1;
  return num / (x - 1);
}

// Enclosure evaluation. Near 1 the rational form degenerates (0/0 at
// the removable point), so a Horner monomial sum is used there; away
// from 1 the rational form is cheaper and tighter for large k.
inline RealInterval psi_eval(int k, const RealInterval& x) {
  require_order(k);
  RealInterval shifted = x - 1L;
  bool away_from_one = abs(shifted).strictly_above(mpq_class(1, 4));
  if (!away_from_one) {
    // psi_k(x) = (((1*x - 1)*x - 1)...*x - 1), k multiply-subtract steps.
    RealInterval acc = RealInterval::point(1, x.precision());
    for (int i = 0; i < k; ++i) acc = acc * x - 1L;
    return acc;
  }
  RealInterval xk = pow_si(x, k);
  RealInterval num = xk * x - 2L * xk + 1L;
  return num / shifted;
}

inline ComplexBox psi_eval(int k, const ComplexBox& x) {
  require_order(k);
  ComplexBox one = ComplexBox::real_point(1, x.precision());
  ComplexBox shifted = x - one;
  bool away_from_one = shifted.modulus().strictly_above(mpq_class(1, 4));
  if (!away_from_one) {
    ComplexBox acc = one;
    for (int i = 0; i < k; ++i) acc = acc * x - one;
    return acc;
  }
  ComplexBox xk = pow_ui(x, static_cast<unsigned long>(k));
  ComplexBox num = xk * x - xk - xk + one;
  return num / shifted;
}

// Certified enclosure of the dominant root by exact rational bisection
// on (2 - 1/k, 2). For x = n/d > 1 the sign of psi_k(x) equals the sign
// of the integer n^{k+1} - 2 n^k d + d^{k+1}, so every step is exact.
inline RealInterval dominant_root(int k, mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  auto sign_above_one = [k](const mpq_class& x) -> int {
    mpz_class n(x.get_num()), d(x.get_den());
    mpz_class nk = pow_z(n, static_cast<unsigned long>(k));
    mpz_class s = nk * n - 2 * nk * d +
                  pow_z(d, static_cast<unsigned long>(k) + 1);
    return sgn(s);
  };
  mpq_class lo(2L * k - 1, static_cast<unsigned long>(k));  // 2 - 1/k, coprime
  mpq_class hi(2);
  if (sign_above_one(lo) >= 0 || sign_above_one(hi) <= 0) {
    throw std::logic_error("dominant-root bracket lost its sign change");
  }
  mpq_class threshold(mpz_class(1),
                      pow_z(2UL, static_cast<unsigned long>(bits) + 8));
  while (hi - lo > threshold) {
    mpq_class mid = (lo + hi) / 2;
    if (sign_above_one(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return RealInterval::of_rational_endpoints(lo, hi, bits + 32);
}

namespace detail {

// Plain (round-to-nearest) complex arithmetic over MPFR, used only to
// polish double-precision root approximations before certification.
struct MpComplex {
  MpfrValue re, im;
  explicit MpComplex(mpfr_prec_t p) : re(p), im(p) {}
  mpfr_prec_t prec() const { return re.prec(); }
};

inline MpComplex mpc_from_double(std::complex<double> z, mpfr_prec_t p) {
  MpComplex r(p);
  mpfr_set_d(r.re.get(), z.real(), MPFR_RNDN);
  mpfr_set_d(r.im.get(), z.imag(), MPFR_RNDN);
  return r;
}

inline MpComplex mpc_add(const MpComplex& a, const MpComplex& b) {
  MpComplex r(std::max(a.prec(), b.prec()));
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

inline MpComplex mpc_mul(const MpComplex& a, const MpComplex& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  MpComplex r(p);
  MpfrValue t1(p), t2(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  return r;
}

inline MpComplex mpc_div(const MpComplex& a, const MpComplex& b) {
  mpfr_prec_t p = std::max(a.prec(), b.prec());
  MpComplex r(p);
  MpfrValue t1(p), t2(p), d(p);
  mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.re.get(), t1.get(), d.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), t1.get(), d.get(), MPFR_RNDN);
  return r;
}

// psi_k(z) and psi_k'(z) via the coupled Horner recurrence
//   d <- d*z + b,  b <- b*z - 1   (k steps, starting b = 1, d = 0).
inline void psi_value_derivative(int k, const MpComplex& z, MpComplex& val,
                                 MpComplex& der) {
  mpfr_prec_t p = z.prec();
  MpComplex b(p), d(p);
  mpfr_set_ui(b.re.get(), 1, MPFR_RNDN);
  for (int i = 0; i < k; ++i) {
    d = mpc_add(mpc_mul(d, z), b);
    b = mpc_mul(b, z);
    mpfr_sub_ui(b.re.get(), b.re.get(), 1, MPFR_RNDN);
  }
  val = std::move(b);
  der = std::move(d);
}

inline MpComplex newton_polish(int k, std::complex<double> z0,
                               mpfr_prec_t p) {
  MpComplex z = mpc_from_double(z0, p);
  MpComplex val(p), der(p);
  MpfrValue corr_abs(p);
  for (int iter = 0; iter < 80; ++iter) {
    psi_value_derivative(k, z, val, der);
    if (mpfr_zero_p(der.re.get()) && mpfr_zero_p(der.im.get())) break;
    MpComplex corr = mpc_div(val, der);
    mpfr_sub(z.re.get(), z.re.get(), corr.re.get(), MPFR_RNDN);
    mpfr_sub(z.im.get(), z.im.get(), corr.im.get(), MPFR_RNDN);
    mpfr_hypot(corr_abs.get(), corr.re.get(), corr.im.get(), MPFR_RNDN);
    // Roots have modulus in (0.4, 2); stop once the step is ulp-sized.
    if (mpfr_zero_p(corr_abs.get()) ||
        mpfr_get_exp(corr_abs.get()) < -static_cast<mpfr_exp_t>(p - 12)) {
      break;
    }
  }
  return z;
}

// Double-precision simultaneous (Durand-Kerner) iteration: good to
// ~1e-12, which is ample as a Newton starting point. Deterministic
// fixed starting spiral, no randomness.
inline std::vector<std::complex<double>> durand_kerner(int k) {
  using C = std::complex<double>;
  auto horner = [k](C z) {
    C b(1.0, 0.0);
    for (int i = 0; i < k; ++i) b = b * z - 1.0;
    return b;
  };
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<C> z(static_cast<std::size_t>(k));
    C base = std::polar(0.97 - 0.03 * attempt, 0.9 + 0.13 * attempt);
    C power = base;
    for (int j = 0; j < k; ++j) {
      z[static_cast<std::size_t>(j)] = power;
      power *= base;
    }
    for (int iter = 0; iter < 2000; ++iter) {
      double worst = 0.0;
      for (int j = 0; j < k; ++j) {
        C denom(1.0, 0.0);
        for (int m = 0; m < k; ++m) {
          if (m != j) {
            denom *= (z[static_cast<std::size_t>(j)] -
                      z[static_cast<std::size_t>(m)]);
          }
        }
        if (std::abs(denom) == 0.0) {
          z[static_cast<std::size_t>(j)] += C(1e-7, 1e-7);
          worst = 1.0;
          continue;
        }
        C corr = horner(z[static_cast<std::size_t>(j)]) / denom;
        z[static_cast<std::size_t>(j)] -= corr;
        worst = std::max(worst, std::abs(corr));
      }
      if (worst < 1e-12) return z;
    }
  }
  throw std::runtime_error("simultaneous root iteration failed to converge");
}

// Taylor coefficients b_m of psi_k at c (b_m = psi^(m)(c)/m!), computed
// by repeated synthetic division in rectangle arithmetic so that each
// b_m is a certified enclosure.
inline std::vector<ComplexBox> taylor_coefficients(int k,
                                                   const ComplexBox& c) {
  mpfr_prec_t p = c.precision();
  std::vector<ComplexBox> a;
  a.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i < k; ++i) a.push_back(ComplexBox::real_point(-1, p));
  a.push_back(ComplexBox::real_point(1, p));
  for (int j = 0; j < k; ++j) {
    for (int i = k - 1; i >= j; --i) {
      a[static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(i)] +
          c * a[static_cast<std::size_t>(i + 1)];
    }
  }
  return a;
}

struct CertifiedDisk {
  MpComplex center;
  MpfrValue radius;
  ComplexBox box;  // bounding box of the disk
};

// Certifies that the open disk |z - center| < r holds exactly one root:
// on the circle, |b_1 (z-c)| strictly dominates the sum of all other
// Taylor terms, so the count matches the linear term's single zero.
inline CertifiedDisk rouche_certify(int k, MpComplex center,
                                    mpfr_prec_t wp) {
  ComplexBox c = ComplexBox::point(center.re.get(), center.im.get());
  std::vector<ComplexBox> b = taylor_coefficients(k, c);
  std::vector<RealInterval> mods;
  mods.reserve(b.size());
  for (const ComplexBox& coeff : b) mods.push_back(coeff.modulus());
  if (mods[1].contains_zero()) {
    throw undecidable_comparison(
        "derivative enclosure touches zero at a root candidate");
  }
  MpfrValue r(wp);
  mpfr_set_ui_2exp(r.get(), 1, -static_cast<mpfr_exp_t>(wp - 16), MPFR_RNDU);
  if (mods[0].strictly_positive()) {
    RealInterval quot = mods[0] / mods[1];
    MpfrValue seed(wp);
    mpfr_mul_2ui(seed.get(), quot.hi(), 2, MPFR_RNDU);  // 4 |b0| / |b1|
    mpfr_max(r.get(), r.get(), seed.get(), MPFR_RNDU);
  }
  for (int attempt = 0; attempt < 24; ++attempt) {
    RealInterval ri = RealInterval::of_mpfr(r.get());
    RealInterval lhs = mods[1] * ri;
    RealInterval rhs = mods[0];
    RealInterval rpow = ri;
    for (int m = 2; m <= k; ++m) {
      rpow = rpow * ri;
      rhs = rhs + mods[static_cast<std::size_t>(m)] * rpow;
    }
    if (rhs.strictly_below(lhs)) {
      MpfrValue lo(wp), hi(wp);
      mpfr_sub(lo.get(), center.re.get(), r.get(), MPFR_RNDD);
      mpfr_add(hi.get(), center.re.get(), r.get(), MPFR_RNDU);
      RealInterval bre = RealInterval::of_mpfr_endpoints(lo.get(), hi.get(), wp);
      mpfr_sub(lo.get(), center.im.get(), r.get(), MPFR_RNDD);
      mpfr_add(hi.get(), center.im.get(), r.get(), MPFR_RNDU);
      RealInterval bim = RealInterval::of_mpfr_endpoints(lo.get(), hi.get(), wp);
      return CertifiedDisk{std::move(center), std::move(r),
                           ComplexBox(std::move(bre), std::move(bim))};
    }
    mpfr_mul_2ui(r.get(), r.get(), 3, MPFR_RNDU);  // widen and retry
  }
  throw undecidable_comparison(
      "no certifiable isolation disk at the current precision");
}

}  // namespace detail

// Certified enclosures of all k roots. `dominant` is the real root in
// (2 - 1/k, 2); `others` are the k-1 roots inside the unit circle, in a
// fixed deterministic order (descending imaginary part).
struct RootSet {
  int k = 0;
  RealInterval dominant;
  std::vector<ComplexBox> others;
  mpfr_prec_t bits = kDefaultPrecision;  // precision of the certified run
};

namespace detail {

inline RootSet all_roots_attempt(int k, mpfr_prec_t wp) {
  const mpfr_prec_t guard = wp + 64;
  std::vector<std::complex<double>> seeds = durand_kerner(k);
  std::vector<CertifiedDisk> disks;
  disks.reserve(seeds.size());
  for (std::complex<double> s : seeds) {
    disks.push_back(rouche_certify(k, newton_polish(k, s, guard), guard));
  }
  // Pairwise disjoint disks, each holding exactly one root, account for
  // all k roots of the degree-k polynomial (and prove them simple).
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      ComplexBox ci = ComplexBox::point(disks[i].center.re.get(),
                                        disks[i].center.im.get());
      ComplexBox cj = ComplexBox::point(disks[j].center.re.get(),
                                        disks[j].center.im.get());
      RealInterval dist = (ci - cj).modulus();
      RealInterval rsum = RealInterval::of_mpfr(disks[i].radius.get()) +
                          RealInterval::of_mpfr(disks[j].radius.get());
      if (!rsum.strictly_below(dist)) {
        throw undecidable_comparison("isolation disks are not disjoint");
      }
    }
  }
  // Exactly one root lies outside the unit circle.
  mpq_class one(1);
  int dominant_idx = -1;
  for (std::size_t i = 0; i < disks.size(); ++i) {
    RealInterval m = disks[i].box.modulus();
    if (m.strictly_above(one)) {
      if (dominant_idx >= 0) {
        throw std::logic_error("two root enclosures outside the unit circle");
      }
      dominant_idx = static_cast<int>(i);
    } else if (!m.strictly_below(one)) {
      throw undecidable_comparison(
          "root modulus enclosure touches the unit circle");
    }
  }
  if (dominant_idx < 0) {
    throw std::logic_error("no root enclosure outside the unit circle");
  }
  const ComplexBox& dbox = disks[static_cast<std::size_t>(dominant_idx)].box;
  if (!dbox.im().contains_zero()) {
    throw std::logic_error("dominant enclosure misses the real axis");
  }
  // Independent bisection enclosure; intersect for the tightest result.
  RealInterval bis = dominant_root(k, wp);
  if (!intersects(bis, dbox.re())) {
    throw std::logic_error(
        "bisection and disk enclosures of the dominant root are disjoint");
  }
  RootSet roots;
  roots.k = k;
  roots.bits = wp;
  roots.dominant = intersection(bis, dbox.re());
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (static_cast<int>(i) != dominant_idx) {
      roots.others.push_back(disks[i].box);
    }
  }
  std::sort(roots.others.begin(), roots.others.end(),
            [](const ComplexBox& a, const ComplexBox& b) {
              double ia = a.center_im_double(), ib = b.center_im_double();
              if (ia != ib) return ia > ib;
              return a.center_re_double() < b.center_re_double();
            });
  // Vieta cross-checks: the root product is (-1)^{k-1}, the sum is 1.
  ComplexBox prod = ComplexBox::from_real(roots.dominant);
  ComplexBox sum = ComplexBox::from_real(roots.dominant);
  for (const ComplexBox& bx : roots.others) {
    prod = prod * bx;
    sum = sum + bx;
  }
  mpz_class target = (k % 2 == 1) ? 1 : -1;
  if (!prod.contains_real(target)) {
    throw std::logic_error("root product invariant violated");
  }
  if (!sum.contains_real(mpz_class(1))) {
    throw std::logic_error("root sum invariant violated");
  }
  return roots;
}

}  // namespace detail

inline RootSet all_roots(int k, mpfr_prec_t bits = kDefaultPrecision) {
  require_order(k);
  return with_precision(
      [k](mpfr_prec_t wp) { return detail::all_roots_attempt(k, wp); }, bits);
}

// Coefficients of the power-sum form F_n = sum_i f_i alpha_i^n, with
//   f_i = (alpha_i - 1) / (alpha_i (2 + (k+1)(alpha_i - 2))).
// f_1 (for the dominant root) is real and lies in (0, 1).
struct BinetCoefficients {
  RealInterval f1;
  std::vector<ComplexBox> tail;  // aligned with RootSet::others
};

inline BinetCoefficients binet_coefficients(const RootSet& roots) {
  const long k1 = roots.k + 1;
  BinetCoefficients out;
  const RealInterval& a = roots.dominant;
  out.f1 = ((a - 1L) / a) / (2L + (a - 2L) * k1);
  out.tail.reserve(roots.others.size());
  for (const ComplexBox& box : roots.others) {
    mpfr_prec_t p = box.precision();
    ComplexBox one = ComplexBox::real_point(1, p);
    ComplexBox two = ComplexBox::real_point(2, p);
    ComplexBox den = two + ComplexBox::real_point(k1, p) * (box - two);
    out.tail.push_back(((box - one) / box) / den);
  }
  return out;
}

// Enclosure of sum_i f_i alpha_i^n (which equals F_n exactly).
inline RealInterval binet_eval(const RootSet& roots,
                               const BinetCoefficients& coeffs, long n) {
  RealInterval total = coeffs.f1 * pow_si(roots.dominant, n);
  if (!roots.others.empty()) {
    ComplexBox acc(roots.others.front().precision());
    for (std::size_t i = 0; i < roots.others.size(); ++i) {
      acc = acc + coeffs.tail[i] * pow_si(roots.others[i], n);
    }
    // The true tail sum is real (conjugate-closed), so its real part
    // encloses the exact value.
    total = total + acc.re();
  }
  return total;
}

// |N(p*alpha - q)| = |prod_i (p alpha_i - q)| = |p|^k |psi_k(q/p)|,
// computed exactly in rational arithmetic.
inline mpq_class norm_linear_form(int k, const mpz_class& p,
                                  const mpz_class& q) {
  require_order(k);
  if (p == 0) {
    throw std::invalid_argument("linear-form norm requires p != 0");
  }
  mpq_class ratio(q, p);
  ratio.canonicalize();
  mpq_class result = abs(psi_eval_exact(k, ratio));
  result *= mpq_class(pow_z(mpz_class(abs(p)), static_cast<unsigned long>(k)));
  return result;
}

}  // namespace kdioph
