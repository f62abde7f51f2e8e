#pragma once
// Exact big-integer helpers: floor square root, perfect-square testing
// with a quadratic-residue prefilter, and small power conveniences.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace kdioph {

// Floor of the square root; exact for any nonnegative integer.
inline mpz_class isqrt(const mpz_class& n) {
  if (n < 0) throw std::domain_error("isqrt of a negative integer");
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root;
}

struct SquareTestResult {
  bool is_square = false;
  // Floor square root; absent for negative inputs.
  std::optional<mpz_class> floor_sqrt;
};

namespace detail {

// Squares hit few residue classes modulo smooth numbers; testing the
// residue of n modulo 64*63*65*11 rejects > 99% of non-squares with a
// single big-integer division and four table lookups.
struct QuadraticResidueTables {
  static constexpr std::uint32_t kModulus = 64u * 63u * 65u * 11u;  // 2882880
  std::array<bool, 64> mod64{};
  std::array<bool, 63> mod63{};
  std::array<bool, 65> mod65{};
  std::array<bool, 11> mod11{};

  QuadraticResidueTables() {
    for (std::uint32_t i = 0; i < 64; ++i) mod64[(i * i) % 64] = true;
    for (std::uint32_t i = 0; i < 63; ++i) mod63[(i * i) % 63] = true;
    for (std::uint32_t i = 0; i < 65; ++i) mod65[(i * i) % 65] = true;
    for (std::uint32_t i = 0; i < 11; ++i) mod11[(i * i) % 11] = true;
  }

  bool admissible(std::uint32_t r) const {
    return mod64[r % 64] && mod63[r % 63] && mod65[r % 65] && mod11[r % 11];
  }
};

inline const QuadraticResidueTables& qr_tables() {
  static const QuadraticResidueTables tables;
  return tables;
}

}  // namespace detail

// True iff the residue of n modulo 2882880 is a possible square residue.
// Never rejects an actual square.
inline bool square_residue_admissible(const mpz_class& n) {
  if (n < 0) return false;
  std::uint32_t r = static_cast<std::uint32_t>(mpz_fdiv_ui(
      n.get_mpz_t(), detail::QuadraticResidueTables::kModulus));
  return detail::qr_tables().admissible(r);
}

inline SquareTestResult is_perfect_square(const mpz_class& n) {
  SquareTestResult result;
  if (n < 0) return result;  // not a square, no floor sqrt reported
  result.floor_sqrt = isqrt(n);
  if (!square_residue_admissible(n)) {
    // The prefilter only ever rejects; the exact root confirms below.
    result.is_square = false;
    return result;
  }
  mpz_class square = *result.floor_sqrt * *result.floor_sqrt;
  result.is_square = (square == n);
  return result;
}

// Fast path used by inner search loops: prefilter, then exact root.
inline bool is_square_fast(const mpz_class& n) {
  if (n < 0) return false;
  if (!square_residue_admissible(n)) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline mpz_class pow_z(unsigned long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace kdioph
