#pragma once
// The terminal obstruction value D(k) = 2^{k+1} k^k - (k+1)^{k+1},
// which equals (k-1) times the norm of (k+1)alpha - 2k over the root
// set, is never a perfect square. Residue witnesses by k mod 4:
//   - k == 0 (mod 4): D == 3 (mod 4), and squares are 0 or 1 mod 4;
//   - k == 3 (mod 4): D = 2^{k+1} (k^k - ((k+1)/2)^{k+1}); a square D
//     would force k^k = w^2 + (((k+1)/2)^{(k+1)/2})^2 with the two
//     squares coprime, but any prime p == 3 (mod 4) dividing k divides
//     k^k and can divide no sum of two coprime squares;
//   - k == 1, 2 (mod 4): no elementary residue witness here; tagged
//     external (covered by non-residue machinery out of scope).

#include <kdioph/bigint.hpp>
#include <kdioph/charpoly.hpp>
#include <kdioph/sequence.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace kdioph {

inline mpz_class discriminant(int k) {
  require_order(k);
  mpz_class d = pow_z(static_cast<unsigned long>(k),
                      static_cast<unsigned long>(k));
  d <<= (k + 1);  // 2^{k+1} k^k
  d -= pow_z(static_cast<unsigned long>(k) + 1,
             static_cast<unsigned long>(k) + 1);
  return d;
}

enum class WitnessKind { kMod4, kTwoSquares, kExternal };

inline const char* witness_kind_name(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::kMod4: return "mod4";
    case WitnessKind::kTwoSquares: return "two-squares";
    case WitnessKind::kExternal: return "external";
  }
  return "unknown";
}

struct ResidueWitness {
  WitnessKind kind = WitnessKind::kExternal;
  // kMod4 claims: d_mod4 == 3.
  int d_mod4 = -1;
  // kTwoSquares claims: p is the smallest prime factor of k congruent
  // to 3 mod 4; gcd(k, (k+1)/2) = 1; and the recomputed residual
  // k^k - ((k+1)/2)^{k+1} = D / 2^{k+1} is not a perfect square.
  long p = 0;
  mpz_class residual;
  bool residual_is_square = false;
  bool gcd_ok = false;

  // True when every claim the witness makes checks out (vacuous for
  // the external tag).
  bool valid(int k) const {
    switch (kind) {
      case WitnessKind::kMod4:
        return d_mod4 == 3;
      case WitnessKind::kTwoSquares:
        return p > 0 && p % 4 == 3 && k % p == 0 && gcd_ok &&
               !residual_is_square;
      case WitnessKind::kExternal:
        return true;
    }
    return false;
  }
};

inline ResidueWitness residue_witness(int k) {
  require_order(k);
  ResidueWitness w;
  if (k % 4 == 0) {
    w.kind = WitnessKind::kMod4;
    w.d_mod4 = static_cast<int>(mpz_fdiv_ui(discriminant(k).get_mpz_t(), 4));
  } else if (k % 4 == 3) {
    w.kind = WitnessKind::kTwoSquares;
    long half = (static_cast<long>(k) + 1) / 2;
    w.residual = pow_z(static_cast<unsigned long>(k),
                       static_cast<unsigned long>(k)) -
                 pow_z(static_cast<unsigned long>(half),
                       static_cast<unsigned long>(k) + 1);
    w.residual_is_square = is_perfect_square(w.residual).is_square;
    w.gcd_ok = (gcd(mpz_class(k), mpz_class(half)) == 1);
    // Smallest prime factor of k congruent to 3 mod 4. One exists:
    // k == 3 (mod 4) cannot be a product of primes all == 1 (mod 4).
    long rem = k;
    for (long p = 2; p * p <= rem && w.p == 0; ++p) {
      while (rem % p == 0) {
        if (p % 4 == 3) {
          w.p = p;
          break;
        }
        rem /= p;
      }
    }
    if (w.p == 0 && rem > 1 && rem % 4 == 3) w.p = rem;
  } else {
    w.kind = WitnessKind::kExternal;
  }
  return w;
}

struct SquareScanRecord {
  int k = 0;
  mpz_class discriminant_value;
  mpz_class floor_sqrt;
  bool is_square = false;
  ResidueWitness witness;
  bool witness_ok = false;
};

inline std::vector<SquareScanRecord> square_scan(int k_max, int k_min = 2) {
  require_order(k_min);
  if (k_max < k_min) {
    throw std::invalid_argument("square scan needs k_max >= k_min");
  }
  std::vector<SquareScanRecord> out;
  out.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) {
    SquareScanRecord rec;
    rec.k = k;
    rec.discriminant_value = discriminant(k);
    SquareTestResult t = is_perfect_square(rec.discriminant_value);
    rec.is_square = t.is_square;
    rec.floor_sqrt = t.floor_sqrt.value_or(mpz_class(0));
    rec.witness = residue_witness(k);
    rec.witness_ok = rec.witness.valid(k);
    out.push_back(std::move(rec));
  }
  return out;
}

struct NormIdentityRecord {
  int k = 0;
  mpq_class norm_alpha;          // |N(alpha)|, expected 1
  mpq_class norm_alpha_minus_1;  // |N(alpha - 1)|, expected k - 1
  mpq_class norm_form;           // |N((k+1)alpha - 2k)|, expected D(k)/(k-1)
  bool ok = false;
};

// Exact rational checks of the three closed-form norms, including the
// link between the linear-form norm and the discriminant.
inline NormIdentityRecord verify_norm_identities(int k) {
  require_order(k);
  NormIdentityRecord rec;
  rec.k = k;
  rec.norm_alpha = norm_linear_form(k, 1, 0);
  rec.norm_alpha_minus_1 = norm_linear_form(k, 1, 1);
  rec.norm_form = norm_linear_form(k, k + 1, 2L * k);
  mpq_class expected(discriminant(k), mpz_class(k - 1));
  expected.canonicalize();
  rec.ok = rec.norm_alpha == 1 && rec.norm_alpha_minus_1 == k - 1 &&
           rec.norm_form == expected;
  return rec;
}

}  // namespace kdioph
