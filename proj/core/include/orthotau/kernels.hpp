#pragma once

// Riemann-Hilbert factor kernels.  From the inside factor P(z) (analytic at
// the origin, invertible constant term) and the outside factor M(z) (analytic
// at infinity, M(inf) = I) this module extracts the Fourier blocks of the two
// bivariate kernels
//
//   a(z,w) = (I - P(z) P(w)^{-1}) / (z - w),
//   d(z,w) = (M(z) M(w)^{-1} - I) / (z - w),
//
// indexed by positive half-integers: a(z,w) = sum a^p_{-q} z^{p-1/2} w^{q-1/2}
// and d(z,w) = sum d^{-q}_p z^{-q-1/2} w^{-p-1/2}.  The division by (z - w) is
// performed exactly through the finite telescoping recursion the vanishing of
// the numerator on z = w induces on coefficients; no limits are taken.
//
// Orthogonality: when the factor satisfies A(z) S A(z)^T = S the blocks obey
//   (a^p_{-q})_{rc} = -(S a^q_{-p} S)_{cr},   same shape for d,
// which check_antisymmetry verifies entrywise.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/halfint.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/rational.hpp"
#include "orthotau/ring.hpp"
#include "orthotau/series.hpp"

namespace orthotau {

enum class KernelKind { A, D };

inline std::string kernel_kind_name(KernelKind k) { return k == KernelKind::A ? "a" : "d"; }

// Fourier blocks of one kernel.  Keys are (2p, 2q) with p, q positive
// half-integers; the stored matrix is a^p_{-q} for kind A and d^{-q}_p for
// kind D.  Blocks with p + q <= max_weight that are identically zero are not
// stored; blocks with p + q > max_weight are unknown unless `exhausted` is
// set, in which case they all vanish.
template <class Elem>
struct KernelBlocks {
  KernelKind kind = KernelKind::A;
  int n = 0;
  long max_weight = 0;
  bool exhausted = false;
  std::map<std::pair<int, int>, Mat<Elem>> blocks;
};

// Stored block at (p, q), or the zero matrix when the block vanishes.
// Reading beyond the truncation of a non-exhausted kernel is a logic error.
template <ScalarRing R>
Mat<typename R::Elem> kernel_block(const R& ring, const KernelBlocks<typename R::Elem>& kb,
                                   const HalfInt& p, const HalfInt& q) {
  if (p.twice <= 0 || q.twice <= 0)
    throw internal_error("kernel_block: indices must be positive half-integers");
  if (sum_int(p, q) > kb.max_weight && !kb.exhausted)
    throw internal_error("kernel_block: block outside the truncated window");
  auto it = kb.blocks.find({p.twice, q.twice});
  if (it == kb.blocks.end()) return mat_zero(ring, kb.n);
  return it->second;
}

inline bool kernel_block_stored(const KernelBlocks<PolyScalar>& kb, int twice_p, int twice_q) {
  return kb.blocks.find({twice_p, twice_q}) != kb.blocks.end();
}

namespace kernel_detail {

// Drops monomials above the ring's weighted-degree cutoff so block arithmetic
// stays inside the same quotient the source series was computed in.
template <ScalarRing R>
void clip(const R& ring, Mat<typename R::Elem>& m, int cutoff) {
  if (cutoff >= 0) m = mat_truncate_degree(ring, m, cutoff);
}

}  // namespace kernel_detail

// Kernel of the inside factor.  Requires the coefficients of psi_plus on
// z^0..z^max_weight; throws numeric_error when the window is too small (the
// bivariate numerator cannot be divided by (z - w) within the truncation).
template <ScalarRing R>
KernelBlocks<typename R::Elem> build_a(const R& ring, const MatSeries<typename R::Elem>& psi_plus,
                                       long max_weight) {
  using EMat = Mat<typename R::Elem>;
  if (max_weight < 0) throw config_error("build_a: max_weight must be non-negative");
  if (psi_plus.n <= 0) throw config_error("build_a: empty factor");
  if (!psi_plus.coeffs.empty() && psi_plus.coeffs.begin()->first < 0)
    throw config_error("build_a: inside factor must be analytic at the origin");
  const long w = max_weight;
  for (long i = 0; i <= w; ++i)
    if (!series_coeff_known(psi_plus, static_cast<int>(i)))
      throw numeric_error(
          "build_a: kernel numerator not divisible by (z - w) within the truncation "
          "(inside factor window smaller than the requested weight)");

  // Inverse coefficients on z^0..z^{w-1}; the inverse anchors at z^0 because
  // the factor is analytic there with invertible constant term.
  MatSeries<typename R::Elem> inv =
      series_inverse(ring, psi_plus, static_cast<int>(w > 0 ? w - 1 : 0));

  KernelBlocks<typename R::Elem> kb;
  kb.kind = KernelKind::A;
  kb.n = psi_plus.n;
  kb.max_weight = w;
  // The block family ends with the stored windows only when both factors are
  // full polynomials in z (inverse included), which series_inverse marks via
  // its exact upper side.
  kb.exhausted = psi_plus.exact_hi && inv.exact_hi &&
                 w >= static_cast<long>(psi_plus.coeffs.empty() ? 0 : psi_plus.kmax) +
                          static_cast<long>(inv.coeffs.empty() ? 0 : inv.kmax);

  // a^p_{-q} = -sum_{v=0}^{q-1/2} C_{p+1/2+v} D_{q-1/2-v}, the coefficient
  // recursion of (z - w) a(z,w) = I - P(z) P(w)^{-1} solved from the column
  // where the kernel support ends.
  for (int tq = 1; tq <= 2 * w - 1; tq += 2) {
    for (int tp = 1; tp + tq <= 2 * w; tp += 2) {
      const int qm = (tq - 1) / 2;  // q - 1/2
      const int ph = (tp + 1) / 2;  // p + 1/2
      EMat acc = mat_zero(ring, kb.n);
      for (int v = 0; v <= qm; ++v) {
        EMat c = series_coeff(ring, psi_plus, ph + v);
        EMat dcf = series_coeff(ring, inv, qm - v);
        acc = mat_add(ring, acc, mat_mul(ring, c, dcf));
      }
      acc = mat_neg(ring, acc);
      kernel_detail::clip(ring, acc, psi_plus.grading_cutoff);
      if (!mat_is_zero(ring, acc)) kb.blocks.emplace(std::make_pair(tp, tq), std::move(acc));
    }
  }
  return kb;
}

// Kernel of the outside factor.  psi_minus must be supported on non-positive
// powers with constant term I.  With max_weight < 0 the support is detected
// automatically, which requires a fully known factor whose inverse terminates
// structurally (nilpotent residue data); the result is then exhausted and
// max_weight equals the largest stored p + q.
template <ScalarRing R>
KernelBlocks<typename R::Elem> build_d(const R& ring, const MatSeries<typename R::Elem>& psi_minus,
                                       long max_weight = -1) {
  using EMat = Mat<typename R::Elem>;
  if (psi_minus.n <= 0) throw config_error("build_d: empty factor");
  if (!psi_minus.exact_hi || (!psi_minus.coeffs.empty() && psi_minus.coeffs.rbegin()->first > 0))
    throw config_error("build_d: outside factor must be analytic at infinity");
  if (!series_coeff_known(psi_minus, 0) ||
      !mat_equal(ring, series_coeff(ring, psi_minus, 0), mat_identity(ring, psi_minus.n)))
    throw config_error("build_d: outside factor must equal I at infinity");

  const bool full = psi_minus.exact_lo;
  if (max_weight < 0 && !full)
    throw config_error("build_d: automatic support detection needs a fully known factor");
  if (!full && -static_cast<long>(psi_minus.kmin) < max_weight)
    throw numeric_error(
        "build_d: kernel numerator not divisible by (z - w) within the truncation "
        "(outside factor window smaller than the requested weight)");

  // Work on the reversed series (z -> 1/z), whose constant term is I.
  MatSeries<typename R::Elem> rev = series_reverse(psi_minus);
  MatSeries<typename R::Elem> revinv;
  bool inv_full = false;
  if (full) {
    try {
      // Invert in the original orientation (support <= 0, constant term I)
      // and reverse the result; reversal commutes with multiplication.
      revinv = series_reverse(series_neumann_inverse(ring, psi_minus));
      inv_full = true;
    } catch (const numeric_error&) {
      // Non-terminating inverse: the factor is not nilpotent-generated.  An
      // explicit truncation can still proceed through the anchored inverse.
      if (max_weight < 0) throw;
    }
  }
  if (!inv_full) revinv = series_inverse(ring, rev, static_cast<int>(max_weight));

  // All blocks vanish once p + q exceeds the combined support depth; with a
  // complete inverse the whole support is scanned so dropped blocks are seen.
  const long depth_c = static_cast<long>(rev.coeffs.empty() ? 0 : rev.coeffs.rbegin()->first);
  const long depth_d =
      static_cast<long>(revinv.coeffs.empty() ? 0 : revinv.coeffs.rbegin()->first);
  const long bound = depth_c + depth_d;
  const long scan = inv_full ? bound : max_weight;

  KernelBlocks<typename R::Elem> kb;
  kb.kind = KernelKind::D;
  kb.n = psi_minus.n;
  long largest = 0;
  bool dropped = false;  // nonzero block beyond the requested truncation

  // d^{-q}_p = +sum_{v=0}^{q-1/2} C_{-(q-1/2)+v} D_{-(p+1/2)-v}, with C the
  // coefficients of M and D those of M^{-1}; reversed storage turns the index
  // -m into m.
  for (int tq = 1; tq <= 2 * scan - 1; tq += 2) {
    for (int tp = 1; tp + tq <= 2 * scan; tp += 2) {
      const int qm = (tq - 1) / 2;  // q - 1/2
      const int ph = (tp + 1) / 2;  // p + 1/2
      EMat acc = mat_zero(ring, kb.n);
      for (int v = 0; v <= qm; ++v) {
        EMat c = series_coeff(ring, rev, qm - v);
        EMat dcf = series_coeff(ring, revinv, ph + v);
        acc = mat_add(ring, acc, mat_mul(ring, c, dcf));
      }
      kernel_detail::clip(ring, acc, psi_minus.grading_cutoff);
      if (mat_is_zero(ring, acc)) continue;
      const long pq = (tp + tq) / 2;
      if (max_weight >= 0 && pq > max_weight) {
        dropped = true;
        continue;
      }
      largest = std::max(largest, pq);
      kb.blocks.emplace(std::make_pair(tp, tq), std::move(acc));
    }
  }

  if (max_weight < 0) {
    kb.max_weight = largest;
    kb.exhausted = true;
  } else {
    kb.max_weight = max_weight;
    kb.exhausted = inv_full && !dropped;
  }
  return kb;
}

// One violated entry of the orthogonal antisymmetry relations.
struct AntisymmetryViolation {
  int twice_p = 0;
  int twice_q = 0;
  int row = 0;  // 1-based entry of block(p, q) + S block(q, p)^T S
  int col = 0;
  std::string residual;
};

// Checks block(p,q) + S * block(q,p)^T * S = 0 for every ordered block pair
// inside the truncation; both kernel kinds store their blocks so that this
// single relation expresses the orthogonality constraint.  Exact rings are
// compared exactly; floating-point rings use the ring's own zero tolerance.
template <ScalarRing R>
std::vector<AntisymmetryViolation> check_antisymmetry(const R& ring,
                                                      const KernelBlocks<typename R::Elem>& kb,
                                                      const Mat<typename R::Elem>& s) {
  if (s.n != kb.n) throw internal_error("check_antisymmetry: involution size mismatch");
  std::vector<AntisymmetryViolation> out;
  std::map<std::pair<int, int>, bool> seen;
  for (const auto& [key, blk] : kb.blocks) {
    (void)blk;
    seen[key] = true;
    seen[{key.second, key.first}] = true;
  }
  for (const auto& [key, present] : seen) {
    (void)present;
    const HalfInt p = half_from_twice(key.first);
    const HalfInt q = half_from_twice(key.second);
    Mat<typename R::Elem> fwd = kernel_block(ring, kb, p, q);
    Mat<typename R::Elem> mirror = kernel_block(ring, kb, q, p);
    Mat<typename R::Elem> res =
        mat_add(ring, fwd, mat_mul(ring, s, mat_mul(ring, mat_transpose(mirror), s)));
    for (int i = 0; i < kb.n; ++i)
      for (int j = 0; j < kb.n; ++j)
        if (!ring.is_zero(res.at(i, j)))
          out.push_back(AntisymmetryViolation{key.first, key.second, i + 1, j + 1,
                                              ring.to_text(res.at(i, j))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factor construction helpers.

// Copies a rational matrix series into the target ring.
template <ScalarRing R>
MatSeries<typename R::Elem> series_from_rational(const R& ring, const MatSeries<Rational>& s) {
  MatSeries<typename R::Elem> r;
  r.n = s.n;
  r.kmin = s.kmin;
  r.kmax = s.kmax;
  r.exact_lo = s.exact_lo;
  r.exact_hi = s.exact_hi;
  r.grading_cutoff = s.grading_cutoff;
  for (const auto& [k, m] : s.coeffs) {
    Mat<typename R::Elem> c = mat_zero(ring, s.n);
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j) c.at(i, j) = ring.from_rational(m.at(i, j));
    r.coeffs.emplace(k, std::move(c));
  }
  series_normalize(ring, r);
  return r;
}

// Re-marks a series as living in the quotient by weighted degree > cutoff and
// truncates the stored coefficients accordingly.
template <ScalarRing R>
MatSeries<typename R::Elem> series_impose_cutoff(const R& ring,
                                                 const MatSeries<typename R::Elem>& s,
                                                 int cutoff) {
  if (cutoff < 0) throw internal_error("series_impose_cutoff: negative cutoff");
  if (s.grading_cutoff >= 0 && s.grading_cutoff != cutoff)
    throw internal_error("series_impose_cutoff: series already carries a different cutoff");
  MatSeries<typename R::Elem> r = s;
  r.grading_cutoff = cutoff;
  for (auto& [k, m] : r.coeffs) m = mat_truncate_degree(ring, m, cutoff);
  series_normalize(ring, r);
  return r;
}

// exp(sum_k c_k Lam^k) for the flow orders and coefficients in `flows`,
// computed in the quotient by weighted degree > grading_cutoff.  Every flow
// coefficient must carry weighted degree >= 1 (the time variables), so powers
// of the exponent eventually vanish in the quotient and the exponential
// terminates.  For blocks complete up to weight W over an algebra of matrix
// size N, cutoff (N-1)*W is always sufficient: minor values are homogeneous
// with weight bounded by that product.
template <ScalarRing R>
MatSeries<typename R::Elem> plus_wave(const R& ring, const MatSeries<typename R::Elem>& lam,
                                      const std::vector<std::pair<int, typename R::Elem>>& flows,
                                      int grading_cutoff) {
  if (grading_cutoff <= 0) throw config_error("plus_wave: grading cutoff must be positive");
  MatSeries<typename R::Elem> y = series_zero(ring, lam.n);
  for (const auto& [order, coeff] : flows) {
    if (order < 1) throw config_error("plus_wave: flow orders must be positive");
    MatSeries<typename R::Elem> pw = series_identity(ring, lam.n);
    for (int i = 0; i < order; ++i) pw = series_mul(ring, pw, lam);
    y = series_add(ring, y, series_scale(ring, coeff, pw));
  }
  y = series_impose_cutoff(ring, y, grading_cutoff);
  return series_exp(ring, y, grading_cutoff + 2);
}

// exp(x / z) for a square matrix x; terminates only for nilpotent x (the
// dressing data used throughout), otherwise series_exp raises numeric_error.
template <ScalarRing R>
MatSeries<typename R::Elem> minus_wave(const R& ring, const Mat<typename R::Elem>& x) {
  return series_exp(ring, series_from_term(ring, x, -1), x.n + 2);
}

}  // namespace orthotau
