#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "orthotau/error.hpp"
#include "orthotau/linalg.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/ring.hpp"

namespace orthotau {

// Formal matrix-valued Laurent series  sum_k  C_k z^k  with a reliability
// window.  Invariant: every stored coefficient is a TRUE coefficient of the
// represented series (within the grading quotient when grading_cutoff >= 0).
// The window [kmin, kmax] bounds what is known:
//   - exact_lo: no nonzero coefficients exist below kmin (so queries below
//     the window return zero); otherwise coefficients below kmin are unknown
//     and querying them is an error.
//   - exact_hi: symmetric, above kmax.
// Absent keys inside the window are zero.  An empty window with both flags
// set is the zero series.
//
// grading_cutoff >= 0 means coefficients live in the quotient that discards
// monomials of weighted degree greater than the cutoff (the weights come
// from the polynomial ring); -1 means untruncated.
template <class Elem>
struct MatSeries {
  int n = 0;
  int kmin = 0;
  int kmax = -1;
  bool exact_lo = true;
  bool exact_hi = true;
  int grading_cutoff = -1;
  std::map<int, Mat<Elem>> coeffs;
};

namespace series_detail {

inline constexpr long long kNegInf = std::numeric_limits<long long>::min() / 4;
inline constexpr long long kPosInf = std::numeric_limits<long long>::max() / 4;

template <class Elem>
long long known_lo(const MatSeries<Elem>& s) {
  return s.exact_lo ? kNegInf : s.kmin;
}

template <class Elem>
long long known_hi(const MatSeries<Elem>& s) {
  return s.exact_hi ? kPosInf : s.kmax;
}

// Merged truncation level for a binary operation: untruncated operands adopt
// the other side's quotient; two distinct quotients cannot be combined.
inline int merge_cutoff(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (a != b) throw internal_error("series operands carry different grading cutoffs");
  return a;
}

}  // namespace series_detail

// Rebuilds the window bounds: zero coefficients are dropped, exact sides
// shrink to the stored support, inexact sides keep their declared bound
// (clipping any keys that leaked past it).
template <ScalarRing R>
void series_normalize(const R& ring, MatSeries<typename R::Elem>& s) {
  for (auto it = s.coeffs.begin(); it != s.coeffs.end();) {
    bool drop = mat_is_zero(ring, it->second);
    if (!drop && !s.exact_lo && it->first < s.kmin) drop = true;
    if (!drop && !s.exact_hi && it->first > s.kmax) drop = true;
    it = drop ? s.coeffs.erase(it) : std::next(it);
  }
  if (s.exact_lo) s.kmin = s.coeffs.empty() ? 0 : s.coeffs.begin()->first;
  if (s.exact_hi) s.kmax = s.coeffs.empty() ? (s.exact_lo ? -1 : s.kmax) : s.coeffs.rbegin()->first;
  if (s.exact_lo && s.exact_hi && s.coeffs.empty()) {
    s.kmin = 0;
    s.kmax = -1;
  }
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_zero(const R&, int n, int cutoff = -1) {
  MatSeries<typename R::Elem> s;
  s.n = n;
  s.grading_cutoff = cutoff;
  return s;
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_identity(const R& ring, int n, int cutoff = -1) {
  MatSeries<typename R::Elem> s = series_zero(ring, n, cutoff);
  s.coeffs.emplace(0, mat_identity(ring, n));
  s.kmin = 0;
  s.kmax = 0;
  return s;
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_from_term(const R& ring, const Mat<typename R::Elem>& m,
                                             int k, int cutoff = -1) {
  MatSeries<typename R::Elem> s = series_zero(ring, m.n, cutoff);
  s.coeffs.emplace(k, m);
  s.kmin = k;
  s.kmax = k;
  series_normalize(ring, s);
  return s;
}

// Adds m * z^k into the series under construction.  Only valid inside (or
// extending) the reliable region; extending past an inexact bound is a bug.
template <ScalarRing R>
void series_set_coeff(const R& ring, MatSeries<typename R::Elem>& s, int k,
                      const Mat<typename R::Elem>& m) {
  if (s.n == 0 && s.coeffs.empty()) s.n = m.n;
  if (m.n != s.n) throw internal_error("series_set_coeff: dimension mismatch");
  if ((!s.exact_lo && k < s.kmin) || (!s.exact_hi && k > s.kmax))
    throw internal_error("series_set_coeff: key outside reliable window");
  auto it = s.coeffs.find(k);
  if (it == s.coeffs.end())
    s.coeffs.emplace(k, m);
  else
    it->second = mat_add(ring, it->second, m);
  if (s.coeffs.size() == 1 && s.exact_lo && s.exact_hi) {
    s.kmin = k;
    s.kmax = k;
  } else {
    s.kmin = std::min(s.kmin, k);
    s.kmax = std::max(s.kmax, k);
  }
  series_normalize(ring, s);
}

// True when the coefficient at k is determined by the stored data.
template <class Elem>
bool series_coeff_known(const MatSeries<Elem>& s, int k) {
  return k >= series_detail::known_lo(s) && k <= series_detail::known_hi(s);
}

// The coefficient of z^k.  Returns zero outside the support when the
// corresponding side is exact; throws if k lies in the unknown region.
template <ScalarRing R>
Mat<typename R::Elem> series_coeff(const R& ring, const MatSeries<typename R::Elem>& s, int k) {
  if (!series_coeff_known(s, k))
    throw internal_error("series_coeff: coefficient outside the reliable window");
  auto it = s.coeffs.find(k);
  if (it != s.coeffs.end()) return it->second;
  return mat_zero(ring, s.n);
}

template <class Elem>
bool series_stored_zero(const MatSeries<Elem>& s) {
  return s.coeffs.empty();
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_neg(const R& ring, const MatSeries<typename R::Elem>& a) {
  MatSeries<typename R::Elem> r = a;
  for (auto& [k, m] : r.coeffs) m = mat_neg(ring, m);
  return r;
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_scale(const R& ring, const typename R::Elem& c,
                                         const MatSeries<typename R::Elem>& a) {
  MatSeries<typename R::Elem> r = a;
  for (auto& [k, m] : r.coeffs) m = mat_scale(ring, c, m);
  if (r.grading_cutoff >= 0)
    for (auto& [k, m] : r.coeffs) m = mat_truncate_degree(ring, m, r.grading_cutoff);
  series_normalize(ring, r);
  return r;
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_add(const R& ring, const MatSeries<typename R::Elem>& a,
                                       const MatSeries<typename R::Elem>& b) {
  using series_detail::kNegInf;
  using series_detail::kPosInf;
  if (a.n != b.n) throw internal_error("series_add: dimension mismatch");
  const long long lo = std::max(series_detail::known_lo(a), series_detail::known_lo(b));
  const long long hi = std::min(series_detail::known_hi(a), series_detail::known_hi(b));
  MatSeries<typename R::Elem> r;
  r.n = a.n;
  r.grading_cutoff = series_detail::merge_cutoff(a.grading_cutoff, b.grading_cutoff);
  r.exact_lo = lo == kNegInf;
  r.exact_hi = hi == kPosInf;
  if (!r.exact_lo) r.kmin = static_cast<int>(lo);
  if (!r.exact_hi) r.kmax = static_cast<int>(hi);
  if (hi < lo) throw internal_error("series_add: empty reliable window");
  for (const auto& [k, m] : a.coeffs)
    if (k >= lo && k <= hi) r.coeffs.emplace(k, m);
  for (const auto& [k, m] : b.coeffs) {
    if (k < lo || k > hi) continue;
    auto it = r.coeffs.find(k);
    if (it == r.coeffs.end())
      r.coeffs.emplace(k, m);
    else
      it->second = mat_add(ring, it->second, m);
  }
  if (r.grading_cutoff >= 0)
    for (auto& [k, m] : r.coeffs) m = mat_truncate_degree(ring, m, r.grading_cutoff);
  series_normalize(ring, r);
  return r;
}

template <ScalarRing R>
MatSeries<typename R::Elem> series_sub(const R& ring, const MatSeries<typename R::Elem>& a,
                                       const MatSeries<typename R::Elem>& b) {
  return series_add(ring, a, series_neg(ring, b));
}

// Product with reliability clipping.  The coefficient of z^k is the full
// convolution; it is reliable only where no unknown tail of one factor can
// pair with known support of the other:
//   - if A has an unknown upper tail, reliability requires B.exact_lo and
//     caps the result at A.kmax + B.kmin (and symmetrically);
//   - mirrored for the lower side.
// When both factors have unknown tails on the facing sides no coefficient is
// reliable at all, which is a programming error here.
template <ScalarRing R>
MatSeries<typename R::Elem> series_mul(const R& ring, const MatSeries<typename R::Elem>& a,
                                       const MatSeries<typename R::Elem>& b) {
  using series_detail::kNegInf;
  using series_detail::kPosInf;
  if (a.n != b.n) throw internal_error("series_mul: dimension mismatch");
  long long hi = kPosInf;
  if (!a.exact_hi) {
    if (!b.exact_lo) throw internal_error("series_mul: no reliable window (a upper, b lower)");
    hi = std::min(hi, static_cast<long long>(a.kmax) + b.kmin);
  }
  if (!b.exact_hi) {
    if (!a.exact_lo) throw internal_error("series_mul: no reliable window (b upper, a lower)");
    hi = std::min(hi, static_cast<long long>(b.kmax) + a.kmin);
  }
  long long lo = kNegInf;
  if (!a.exact_lo) {
    if (!b.exact_hi) throw internal_error("series_mul: no reliable window (a lower, b upper)");
    lo = std::max(lo, static_cast<long long>(a.kmin) + b.kmax);
  }
  if (!b.exact_lo) {
    if (!a.exact_hi) throw internal_error("series_mul: no reliable window (b lower, a upper)");
    lo = std::max(lo, static_cast<long long>(b.kmin) + a.kmax);
  }
  MatSeries<typename R::Elem> r;
  r.n = a.n;
  r.grading_cutoff = series_detail::merge_cutoff(a.grading_cutoff, b.grading_cutoff);
  r.exact_lo = lo == kNegInf;
  r.exact_hi = hi == kPosInf;
  if (hi < lo) throw internal_error("series_mul: empty reliable window");
  if (!r.exact_lo) r.kmin = static_cast<int>(lo);
  if (!r.exact_hi) r.kmax = static_cast<int>(hi);
  for (const auto& [ka, ma] : a.coeffs) {
    for (const auto& [kb, mb] : b.coeffs) {
      const long long k = static_cast<long long>(ka) + kb;
      if (k < lo || k > hi) continue;
      Mat<typename R::Elem> prod = mat_mul(ring, ma, mb);
      if (r.grading_cutoff >= 0) prod = mat_truncate_degree(ring, prod, r.grading_cutoff);
      auto it = r.coeffs.find(static_cast<int>(k));
      if (it == r.coeffs.end())
        r.coeffs.emplace(static_cast<int>(k), std::move(prod));
      else
        it->second = mat_add(ring, it->second, prod);
    }
  }
  series_normalize(ring, r);
  return r;
}

// z^d * S.
template <class Elem>
MatSeries<Elem> series_zshift(const MatSeries<Elem>& s, int d) {
  MatSeries<Elem> r;
  r.n = s.n;
  r.kmin = s.kmin + d;
  r.kmax = s.kmax + d;
  r.exact_lo = s.exact_lo;
  r.exact_hi = s.exact_hi;
  r.grading_cutoff = s.grading_cutoff;
  for (const auto& [k, m] : s.coeffs) r.coeffs.emplace(k + d, m);
  return r;
}

// z -> 1/z.
template <class Elem>
MatSeries<Elem> series_reverse(const MatSeries<Elem>& s) {
  MatSeries<Elem> r;
  r.n = s.n;
  r.kmin = -s.kmax;
  r.kmax = -s.kmin;
  r.exact_lo = s.exact_hi;
  r.exact_hi = s.exact_lo;
  r.grading_cutoff = s.grading_cutoff;
  for (const auto& [k, m] : s.coeffs) r.coeffs.emplace(-k, m);
  return r;
}

template <class Elem>
MatSeries<Elem> series_transpose(const MatSeries<Elem>& s) {
  MatSeries<Elem> r = s;
  for (auto& [k, m] : r.coeffs) m = mat_transpose(m);
  return r;
}

template <ScalarRing R>
bool series_equal_on(const R& ring, const MatSeries<typename R::Elem>& a,
                     const MatSeries<typename R::Elem>& b, int lo, int hi) {
  if (a.n != b.n) return false;
  for (int k = lo; k <= hi; ++k)
    if (!mat_equal(ring, series_coeff(ring, a, k), series_coeff(ring, b, k))) return false;
  return true;
}

// exp(X) summed until the power term vanishes identically (as stored, i.e.
// within the grading quotient).  Termination is structural: nilpotent
// coefficient structure or a grading cutoff must kill X^m for some m <=
// max_power, otherwise this throws numeric_error.  X must be fully known.
template <ScalarRing R>
MatSeries<typename R::Elem> series_exp(const R& ring, const MatSeries<typename R::Elem>& x,
                                       int max_power = 64) {
  if (!x.exact_lo || !x.exact_hi)
    throw internal_error("series_exp: exponent must be fully known");
  MatSeries<typename R::Elem> acc = series_identity(ring, x.n, x.grading_cutoff);
  MatSeries<typename R::Elem> term = acc;
  for (int m = 1; m <= max_power; ++m) {
    term = series_mul(ring, term, x);
    term = series_scale(ring, ring.from_ratio(1, m), term);
    if (series_stored_zero(term)) return acc;
    acc = series_add(ring, acc, term);
  }
  throw numeric_error("series_exp: exponential did not terminate structurally");
}

// Inverse anchored at the lowest power.  Writing A = C z^m (I + higher),
// the inverse has lowest power -m and its coefficients follow from the
// recursion  B_{-m} = C^{-1},  B_{-m+s} = -C^{-1} sum_{u=1..s} A_{m+u} B_{-m+s-u}.
// Coefficients are produced up to z^hi, clamped to what A's window supports;
// the result's upper side is marked inexact (the true inverse continues),
// except for the trivial single-term case.
template <ScalarRing R>
MatSeries<typename R::Elem> series_inverse(const R& ring, const MatSeries<typename R::Elem>& a,
                                           int hi) {
  if (!a.exact_lo) throw internal_error("series_inverse: lowest coefficient must be known");
  if (a.coeffs.empty()) throw config_error("series_inverse: cannot invert the zero series");
  const int m = a.kmin;
  Mat<typename R::Elem> c = series_coeff(ring, a, m);
  Mat<typename R::Elem> cinv = mat_inverse_flv(ring, c);  // throws config_error if singular
  if (a.grading_cutoff >= 0) cinv = mat_truncate_degree(ring, cinv, a.grading_cutoff);
  const bool single_term = a.exact_hi && a.kmax == m;
  long long max_s_ll = static_cast<long long>(hi) + m;
  if (!a.exact_hi) max_s_ll = std::min(max_s_ll, static_cast<long long>(a.kmax) - m);
  const int max_s = max_s_ll < 0 ? -1 : static_cast<int>(max_s_ll);

  MatSeries<typename R::Elem> r;
  r.n = a.n;
  r.grading_cutoff = a.grading_cutoff;
  r.exact_lo = true;
  r.exact_hi = single_term;
  std::map<int, Mat<typename R::Elem>> b;  // keyed by s: coefficient of z^{-m+s}
  b.emplace(0, cinv);
  for (int s = 1; s <= max_s; ++s) {
    Mat<typename R::Elem> acc = mat_zero(ring, a.n);
    for (int u = 1; u <= s; ++u) {
      auto ait = a.coeffs.find(m + u);
      if (ait == a.coeffs.end()) continue;
      acc = mat_add(ring, acc, mat_mul(ring, ait->second, b.at(s - u)));
    }
    Mat<typename R::Elem> bs = mat_neg(ring, mat_mul(ring, cinv, acc));
    if (r.grading_cutoff >= 0) bs = mat_truncate_degree(ring, bs, r.grading_cutoff);
    b.emplace(s, std::move(bs));
  }
  for (auto& [s, mat] : b) r.coeffs.emplace(-m + s, std::move(mat));
  r.kmin = -m;
  r.kmax = -m + std::max(max_s, 0);
  series_normalize(ring, r);
  return r;
}

// Inverse of A = I - M via the Neumann series sum M^j, valid when the
// series terminates structurally (then the result is complete and fully
// exact).  Requires A's z^0 coefficient to be the identity and no support
// above z^0.  Throws numeric_error when max_power is exhausted.
template <ScalarRing R>
MatSeries<typename R::Elem> series_neumann_inverse(const R& ring,
                                                   const MatSeries<typename R::Elem>& a,
                                                   int max_power = 64) {
  if (!a.exact_lo || !a.exact_hi)
    throw internal_error("series_neumann_inverse: operand must be fully known");
  if (a.kmax > 0)
    throw config_error("series_neumann_inverse: support above z^0");
  if (!mat_equal(ring, series_coeff(ring, a, 0), mat_identity(ring, a.n)))
    throw config_error("series_neumann_inverse: z^0 coefficient is not the identity");
  MatSeries<typename R::Elem> mser = series_sub(ring, series_identity(ring, a.n, a.grading_cutoff), a);
  MatSeries<typename R::Elem> acc = series_identity(ring, a.n, a.grading_cutoff);
  MatSeries<typename R::Elem> term = acc;
  for (int j = 1; j <= max_power; ++j) {
    term = series_mul(ring, term, mser);
    if (series_stored_zero(term)) return acc;
    acc = series_add(ring, acc, term);
  }
  throw numeric_error("series_neumann_inverse: Neumann series did not terminate");
}

}  // namespace orthotau
