#pragma once
// Multiplicative independence evidence for the root set.
//
// The matrix with entries log|sigma_j(alpha_i)| (conjugate log-moduli)
// is strictly diagonally dominant: the diagonal carries log alpha_1 > 0
// and every off-diagonal entry is log|alpha_i| < 0 with
// sum_i(-log|alpha_i|) = log alpha_1 exactly (the root product has
// modulus 1). Strict dominance certifies that no nonzero integer
// exponent vector can make a product of root powers trivial, for every
// subset of k-1 roots. The certificate reduces to: every non-dominant
// modulus is certifiably below 1, i.e. every -log|alpha_i| is positive.
//
// relation_probe independently brute-forces small exponent vectors and
// reports any whose power product has modulus certifiably near 1; only
// the all-zero vector and integer multiples of the all-ones vector (the
// norm relation |prod alpha_i| = 1) should survive.

#include <kdioph/charpoly.hpp>
#include <kdioph/interval.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kdioph {

struct IndependenceCertificate {
  int k = 0;
  int omitted_index = 0;  // 1-based root index excluded from the subset
  RealInterval log_dominant;
  // -log|alpha_i| for each non-dominant root, aligned with RootSet::others;
  // these are the dominance margins of the conjugate-log matrix rows.
  std::vector<RealInterval> margins;
  RealInterval dominance_margin;  // min over margins
  bool sum_matches = false;  // sum(margins) intersects log_dominant
  bool ok = false;
};

// The margin list is identical for every choice of omitted root (the
// conjugate images only permute), so omitted_index is carried for
// reporting. omitted_index 0 selects the default subset (omit the last
// non-dominant root, index k).
inline IndependenceCertificate independence_certificate(
    const RootSet& roots, int omitted_index = 0) {
  if (omitted_index == 0) omitted_index = roots.k;
  if (omitted_index < 1 || omitted_index > roots.k) {
    throw std::invalid_argument("omitted root index out of range 1..k");
  }
  IndependenceCertificate cert;
  cert.k = roots.k;
  cert.omitted_index = omitted_index;
  cert.log_dominant = log(roots.dominant);
  cert.margins.reserve(roots.others.size());
  for (const ComplexBox& box : roots.others) {
    cert.margins.push_back(-log(box.modulus()));
  }
  bool all_positive = cert.log_dominant.strictly_positive();
  RealInterval sum(cert.log_dominant.precision());
  bool first = true;
  for (const RealInterval& m : cert.margins) {
    all_positive = all_positive && m.strictly_positive();
    sum = sum + m;
    cert.dominance_margin = first ? m : min(cert.dominance_margin, m);
    first = false;
  }
  cert.sum_matches = intersects(sum, cert.log_dominant);
  cert.ok = all_positive && cert.sum_matches;
  return cert;
}

struct RelationCandidate {
  std::vector<long> exponents;  // m_1..m_k: dominant first, then others
  bool trivial = false;         // all-zero vector
  bool norm_relation = false;   // nonzero multiple of the all-ones vector
  // Both gates (modulus sum near 0, angle sum near a multiple of pi/12)
  // hold for every reported candidate, so this is always true; kept so
  // serialized candidates state which gates they passed.
  bool argument_consistent = false;
  double log_residual = 0.0;    // double estimate of sum m_i log|alpha_i|
};

// Enumerates every exponent vector with |m_i| <= bound and reports the
// vectors whose product of root-modulus powers is certifiably within
// the 2^(-bits/4)-relative neighborhood of 1. Survivors are re-checked
// against a root set at doubled precision before being reported.
inline std::vector<RelationCandidate> relation_probe(const RootSet& roots,
                                                     int bound) {
  if (bound < 1) {
    throw std::invalid_argument("relation probe needs bound >= 1");
  }
  const int k = roots.k;
  double space = std::pow(2.0 * bound + 1.0, k);
  if (space > 5e8) {
    throw std::invalid_argument(
        "relation probe space exceeds the enumeration budget");
  }

  auto build_logs = [](const RootSet& rs) {
    std::vector<RealInterval> logs;
    logs.reserve(static_cast<std::size_t>(rs.k));
    logs.push_back(log(rs.dominant));
    for (const ComplexBox& box : rs.others) {
      logs.push_back(log(box.modulus()));
    }
    return logs;
  };
  auto build_delta = [](const std::vector<RealInterval>& logs,
                        mpfr_prec_t bits) {
    RealInterval norm2(logs.front().precision());
    for (const RealInterval& l : logs) norm2 = norm2 + pow_si(l, 2);
    return scale2(sqrt(norm2), -static_cast<long>(bits / 4));
  };
  auto combination = [](const std::vector<RealInterval>& logs,
                        const std::vector<long>& m) {
    RealInterval s(logs.front().precision());
    for (std::size_t i = 0; i < logs.size(); ++i) {
      if (m[i] != 0) s = s + logs[i] * m[i];
    }
    return s;
  };
  auto within = [](const RealInterval& s, const RealInterval& delta) {
    // Whole enclosure strictly inside (-delta, delta), conservatively
    // against the inner edge of the delta enclosure.
    return mpfr_cmp(abs(s).hi(), delta.lo()) < 0;
  };

  std::vector<RealInterval> logs = build_logs(roots);
  RealInterval delta = build_delta(logs, roots.bits);

  // Double-precision data for the prefilter and the argument tag.
  std::vector<double> dlogs, dargs;
  dlogs.reserve(static_cast<std::size_t>(k));
  dargs.reserve(static_cast<std::size_t>(k));
  dlogs.push_back(logs.front().mid_double());
  dargs.push_back(0.0);
  for (std::size_t i = 0; i < roots.others.size(); ++i) {
    dlogs.push_back(logs[i + 1].mid_double());
    dargs.push_back(std::atan2(roots.others[i].center_im_double(),
                               roots.others[i].center_re_double()));
  }

  // Lazily built doubled-precision recheck data.
  std::optional<std::vector<RealInterval>> logs2;
  std::optional<RealInterval> delta2;
  auto recheck = [&](const std::vector<long>& m) {
    if (!logs2) {
      RootSet finer = all_roots(k, roots.bits * 2);
      logs2 = build_logs(finer);
      delta2 = build_delta(*logs2, finer.bits);
    }
    return within(combination(*logs2, m), *delta2);
  };

  constexpr double kPi12 = 0.2617993877991494365;  // pi / 12
  // A genuine power relation needs more than a vanishing modulus sum:
  // the argument of the product must be a root-of-unity angle. This
  // drops the spurious modulus-only combinations a conjugate pair
  // produces (moving exponents inside a pair keeps the modulus sum at
  // 0 but leaves a non-trivial angle).
  auto argument_ok = [&dargs, kPi12](const std::vector<long>& mm) {
    double theta = 0.0;
    for (std::size_t i = 0; i < mm.size(); ++i) {
      theta += static_cast<double>(mm[i]) * dargs[i];
    }
    double nearest = std::round(theta / kPi12) * kPi12;
    return std::fabs(theta - nearest) < 1e-9;
  };

  std::vector<RelationCandidate> out;
  std::vector<long> m(static_cast<std::size_t>(k), -bound);
  for (;;) {
    double approx = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      approx += static_cast<double>(m[i]) * dlogs[i];
    }
    if (std::fabs(approx) < 1e-6 && argument_ok(m) &&
        within(combination(logs, m), delta) && recheck(m)) {
      RelationCandidate cand;
      cand.exponents = m;
      cand.log_residual = approx;
      cand.argument_consistent = true;
      cand.trivial = true;
      cand.norm_relation = true;
      for (std::size_t i = 0; i < m.size(); ++i) {
        cand.trivial = cand.trivial && m[i] == 0;
        cand.norm_relation = cand.norm_relation && m[i] == m[0];
      }
      cand.norm_relation = cand.norm_relation && m[0] != 0;
      out.push_back(std::move(cand));
    }
    // Lexicographic odometer over [-bound, bound]^k.
    int pos = k - 1;
    while (pos >= 0 && m[static_cast<std::size_t>(pos)] == bound) {
      m[static_cast<std::size_t>(pos)] = -bound;
      --pos;
    }
    if (pos < 0) break;
    ++m[static_cast<std::size_t>(pos)];
  }
  return out;
}

}  // namespace kdioph
