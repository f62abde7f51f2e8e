#pragma once
// Truncated expansion of the largest triple element. For a solution
// with ab+1 = F_x, ac+1 = F_y, bc+1 = F_z,
//
//   c = sqrt((F_y-1)(F_z-1)/(F_x-1))
//     = sqrt(f1) alpha_1^{(-x+y+z)/2} ((1+u_x)^{-1/2}(1+u_y)^{1/2}(1+u_z)^{1/2}),
//
// where F_t - 1 = f1 alpha_1^t (1 + u_t) and
//
//   u_t = -(1/f1) alpha_1^{-t} + sum_{i>=2} (f_i/f1) alpha_i^t alpha_1^{-t}.
//
// Expanding the three binomial factors to total order T and collecting
// like monomials yields terms d_j * M_j with
//   M_j = prod_i alpha_i^{L_{i,j}(x,y,z)},
// where the dominant exponent form L_1 has non-positive coefficients,
// every other form is non-negative, and each non-constant monomial
// satisfies |M_j| <= (2/3)^x for x <= y <= z (decay rate log(3/2)).

#include <kdioph/charpoly.hpp>
#include <kdioph/interval.hpp>
#include <kdioph/sequence.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace kdioph {

struct ExpansionTerm {
  ComplexBox coefficient;
  // Row i holds the (x, y, z) coefficients of the exponent form L_{i+1};
  // row 0 belongs to the dominant root, the rest follow RootSet::others.
  std::vector<std::array<long, 3>> exponents;

  bool is_constant() const {
    for (const std::array<long, 3>& row : exponents) {
      if (row[0] != 0 || row[1] != 0 || row[2] != 0) return false;
    }
    return true;
  }
};

struct ExpansionConfig {
  int order = 1;    // total truncation order T (capped at 6)
  int epsilon = 0;  // parity bit: -x+y+z == epsilon (mod 2)
  double kappa = 0.4054651081081644;  // log(3/2), the monomial decay rate
  std::size_t max_terms = 200000;     // enumeration guard
};

// Parity bit of -x+y+z, the epsilon the evaluation point requires.
inline int parity_epsilon(long x, long y, long z) {
  return static_cast<int>((((-x + y + z) % 2) + 2) % 2);
}

// Number of generating multi-index triples at total order <= T.
inline mpz_class expansion_term_budget(int k, int order) {
  mpz_class n;
  mpz_bin_uiui(n.get_mpz_t(), static_cast<unsigned long>(order + 3 * k),
               static_cast<unsigned long>(3 * k));
  return n;
}

namespace detail {

inline mpq_class half_binomial(const mpq_class& h, int j) {
  mpq_class b(1);
  for (int i = 0; i < j; ++i) {
    b *= (h - i);
    b /= (i + 1);
  }
  return b;
}

// total! / prod parts_s!, computed as a product of binomials.
inline mpz_class multinomial(const std::vector<int>& parts) {
  mpz_class r(1);
  int used = 0;
  for (int p : parts) {
    used += p;
    mpz_class choose;
    mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(used),
                 static_cast<unsigned long>(p));
    r *= choose;
  }
  return r;
}

// All multi-indices over `slots` slots with total order <= limit.
inline std::vector<std::vector<int>> multi_indices(int slots, int limit) {
  std::vector<std::vector<int>> out;
  std::vector<int> j(static_cast<std::size_t>(slots), 0);
  for (;;) {
    int total = 0;
    for (int v : j) total += v;
    if (total <= limit) out.push_back(j);
    int pos = slots - 1;
    while (pos >= 0 && j[static_cast<std::size_t>(pos)] == limit) {
      j[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++j[static_cast<std::size_t>(pos)];
  }
  return out;
}

inline int order_of(const std::vector<int>& j) {
  int total = 0;
  for (int v : j) total += v;
  return total;
}

}  // namespace detail

// Expands the three binomial factors to total order <= config.order and
// collects like monomials. Terms whose coefficient enclosure contains
// zero are dropped (none arise in practice: the exponent matrix
// determines its generating multi-indices uniquely).
inline std::vector<ExpansionTerm> expand_c(const RootSet& roots,
                                           const BinetCoefficients& coeffs,
                                           const ExpansionConfig& config) {
  const int k = roots.k;
  const int T = config.order;
  if (T < 0 || T > 6) {
    throw std::invalid_argument("truncation order must lie in 0..6");
  }
  if (config.epsilon != 0 && config.epsilon != 1) {
    throw std::invalid_argument("parity bit must be 0 or 1");
  }
  if (expansion_term_budget(k, T) > static_cast<long>(config.max_terms)) {
    throw std::invalid_argument(
        "expansion would exceed the term budget; reduce the truncation order");
  }
  const mpfr_prec_t prec = roots.dominant.precision();

  // Per-slot base values: slot 0 is -(1/f1) (dominant drop term), slot
  // s >= 1 is f_{s+1}/f1. Powers are cached up to T.
  std::vector<std::vector<ComplexBox>> base_pow(
      static_cast<std::size_t>(k),
      std::vector<ComplexBox>());
  {
    RealInterval minus_inv_f1 =
        RealInterval::point(-1, prec) / coeffs.f1;
    for (int s = 0; s < k; ++s) {
      ComplexBox base = (s == 0)
                            ? ComplexBox::from_real(minus_inv_f1)
                            : coeffs.tail[static_cast<std::size_t>(s - 1)] /
                                  coeffs.f1;
      std::vector<ComplexBox>& pows = base_pow[static_cast<std::size_t>(s)];
      pows.reserve(static_cast<std::size_t>(T) + 1);
      pows.push_back(ComplexBox::real_point(1, prec));
      for (int e = 1; e <= T; ++e) pows.push_back(pows.back() * base);
    }
  }

  const mpq_class minus_half(-1, 2), plus_half(1, 2);
  std::vector<mpq_class> binom_x, binom_yz;
  for (int j = 0; j <= T; ++j) {
    binom_x.push_back(detail::half_binomial(minus_half, j));
    binom_yz.push_back(detail::half_binomial(plus_half, j));
  }

  std::vector<std::vector<int>> indices = detail::multi_indices(k, T);
  std::map<std::vector<std::array<long, 3>>, ComplexBox> collected;

  for (const std::vector<int>& jx : indices) {
    int ox = detail::order_of(jx);
    if (ox > T) continue;
    mpq_class rx = binom_x[static_cast<std::size_t>(ox)] *
                   detail::multinomial(jx);
    for (const std::vector<int>& jy : indices) {
      int oy = detail::order_of(jy);
      if (ox + oy > T) continue;
      mpq_class rxy = rx * binom_yz[static_cast<std::size_t>(oy)] *
                      detail::multinomial(jy);
      for (const std::vector<int>& jz : indices) {
        int oz = detail::order_of(jz);
        if (ox + oy + oz > T) continue;
        mpq_class rat = rxy * binom_yz[static_cast<std::size_t>(oz)] *
                        detail::multinomial(jz);

        ComplexBox coeff = ComplexBox::from_real(
            RealInterval::of_rational(rat, prec));
        std::vector<std::array<long, 3>> rows(
            static_cast<std::size_t>(k), std::array<long, 3>{0, 0, 0});
        rows[0] = {-static_cast<long>(ox), -static_cast<long>(oy),
                   -static_cast<long>(oz)};
        for (int s = 0; s < k; ++s) {
          int e = jx[static_cast<std::size_t>(s)] +
                  jy[static_cast<std::size_t>(s)] +
                  jz[static_cast<std::size_t>(s)];
          if (e > 0) {
            coeff = coeff *
                    base_pow[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)];
          }
          if (s >= 1) {
            rows[static_cast<std::size_t>(s)] = {
                static_cast<long>(jx[static_cast<std::size_t>(s)]),
                static_cast<long>(jy[static_cast<std::size_t>(s)]),
                static_cast<long>(jz[static_cast<std::size_t>(s)])};
          }
        }
        auto [it, inserted] = collected.emplace(std::move(rows), coeff);
        if (!inserted) it->second = it->second + coeff;
      }
    }
  }

  std::vector<ExpansionTerm> terms;
  terms.reserve(collected.size());
  for (auto& [rows, coeff] : collected) {
    // A coefficient enclosure containing zero carries no certified
    // information (cannot occur here: the exponent matrix pins down its
    // generating multi-indices, so nothing ever cancels).
    if (coeff.contains_zero()) continue;
    // Sign structure: dominant exponents non-positive, others non-negative.
    for (std::size_t i = 1; i < rows.size(); ++i) {
      for (long v : rows[i]) {
        if (v < 0) throw std::logic_error("negative non-dominant exponent");
      }
    }
    for (long v : rows[0]) {
      if (v > 0) throw std::logic_error("positive dominant exponent");
    }
    terms.push_back(ExpansionTerm{coeff, rows});
  }
  return terms;
}

// Certified enclosure of M_j = prod_i alpha_i^{L_i(x,y,z)}.
inline ComplexBox monomial_value(const RootSet& roots,
                                 const ExpansionTerm& term, long x, long y,
                                 long z) {
  const std::array<long, 3>& r0 = term.exponents[0];
  long e1 = r0[0] * x + r0[1] * y + r0[2] * z;
  ComplexBox value = ComplexBox::from_real(pow_si(roots.dominant, e1));
  for (std::size_t i = 1; i < term.exponents.size(); ++i) {
    const std::array<long, 3>& row = term.exponents[i];
    long e = row[0] * x + row[1] * y + row[2] * z;
    if (e != 0) {
      value = value * pow_si(roots.others[i - 1], e);
    }
  }
  return value;
}

// Evaluates the truncated expansion at an admissible index triple:
// sqrt(f1 alpha_1^epsilon) * alpha_1^{(-x+y+z-epsilon)/2} * sum_j d_j M_j.
inline RealInterval eval_expansion(const RootSet& roots,
                                   const BinetCoefficients& coeffs,
                                   const std::vector<ExpansionTerm>& terms,
                                   const ExpansionConfig& config, long x,
                                   long y, long z) {
  if (!(1 <= x && x <= y && y <= z)) {
    throw std::invalid_argument("evaluation needs 1 <= x <= y <= z");
  }
  long shifted = -x + y + z - config.epsilon;
  if (shifted % 2 != 0) {
    throw std::invalid_argument(
        "parity mismatch: -x+y+z-epsilon must be even");
  }
  RealInterval lead =
      sqrt(coeffs.f1 * pow_si(roots.dominant, config.epsilon)) *
      pow_si(roots.dominant, shifted / 2);
  ComplexBox acc(lead.precision());
  for (const ExpansionTerm& term : terms) {
    acc = acc + term.coefficient * monomial_value(roots, term, x, y, z);
  }
  // The exact term sum is real (conjugate-closed), so the real part of
  // the rectangle sum encloses it.
  return lead * acc.re();
}

struct MonomialDecayRecord {
  std::size_t term_index = 0;
  bool ok = false;  // |M_j| <= (2/3)^x certified
};

// Checks the decay bound for every non-constant monomial at (x, y, z).
inline std::vector<MonomialDecayRecord> monomial_decay_check(
    const RootSet& roots, const std::vector<ExpansionTerm>& terms, long x,
    long y, long z) {
  if (!(1 <= x && x <= y && y <= z)) {
    throw std::invalid_argument("decay check needs 1 <= x <= y <= z");
  }
  mpq_class bound = pow_q(mpq_class(2, 3), static_cast<unsigned long>(x));
  std::vector<MonomialDecayRecord> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].is_constant()) continue;
    RealInterval mod = monomial_value(roots, terms[i], x, y, z).modulus();
    MonomialDecayRecord rec;
    rec.term_index = i;
    rec.ok = mpfr_cmp_q(mod.hi(), bound.get_mpq_t()) <= 0;
    out.push_back(rec);
  }
  return out;
}

// Exact-value reference: c = sqrt((F_y-1)(F_z-1)/(F_x-1)) as a certified
// enclosure, for measuring truncation error.
inline RealInterval reference_c(int k, long x, long y, long z,
                                mpfr_prec_t bits = kDefaultPrecision) {
  SequenceCache cache(k);
  mpz_class fx1 = cache.at(x) - 1;
  if (fx1 == 0) {
    throw std::invalid_argument("reference value needs F_x > 1");
  }
  mpq_class ratio(mpz_class((cache.at(y) - 1) * (cache.at(z) - 1)), fx1);
  ratio.canonicalize();
  return sqrt(RealInterval::of_rational(ratio, bits));
}

}  // namespace kdioph
