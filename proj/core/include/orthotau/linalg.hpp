#pragma once

#include <utility>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/ring.hpp"

namespace orthotau {

// Division-free determinant via dynamic programming over column subsets:
// f(S) is the determinant of the submatrix on the first |S| rows and the
// columns S, expanded along its last row.  Works over any ring, so it serves
// as the independent oracle against the Pfaffian and LU paths.  Exponential
// in n; guarded to n <= 16.
template <ScalarRing R>
typename R::Elem det_subset_dp(const R& ring, const Mat<typename R::Elem>& a) {
  const int n = a.n;
  if (n == 0) return ring.one();
  if (n > 16) throw internal_error("det_subset_dp: dimension too large");
  const std::size_t full = std::size_t{1} << n;
  std::vector<typename R::Elem> f(full, ring.zero());
  f[0] = ring.one();
  for (std::size_t s = 1; s < full; ++s) {
    const int row = __builtin_popcountll(s) - 1;
    typename R::Elem acc = ring.zero();
    int pos = 0;
    for (int j = 0; j < n; ++j) {
      if (!(s & (std::size_t{1} << j))) continue;
      const auto& m = a.at(row, j);
      if (!ring.is_zero(m)) {
        typename R::Elem t = ring.mul(m, f[s & ~(std::size_t{1} << j)]);
        acc = ((row + pos) % 2 == 0) ? ring.add(acc, t) : ring.sub(acc, t);
      }
      ++pos;
    }
    f[s] = std::move(acc);
  }
  return f[full - 1];
}

// LU determinant with partial pivoting by abs_estimate.  Requires a ring
// whose divide is a true field division (rationals, complex doubles).
template <ScalarRing R>
typename R::Elem det_lu(const R& ring, const Mat<typename R::Elem>& a) {
  const int n = a.n;
  Mat<typename R::Elem> m = a;
  bool negate = false;
  typename R::Elem det = ring.one();
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    double best = 0.0;
    for (int i = col; i < n; ++i) {
      double v = ring.abs_estimate(m.at(i, col));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (pivot < 0) return ring.zero();
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(pivot, j));
      negate = !negate;
    }
    const typename R::Elem& p = m.at(col, col);
    det = ring.mul(det, p);
    for (int i = col + 1; i < n; ++i) {
      if (ring.is_zero(m.at(i, col))) continue;
      typename R::Elem factor = ring.divide(m.at(i, col), p);
      for (int j = col; j < n; ++j)
        m.at(i, j) = ring.sub(m.at(i, j), ring.mul(factor, m.at(col, j)));
    }
  }
  return negate ? ring.neg(det) : det;
}

// Faddeev-LeVerrier characteristic-polynomial recursion.  Divides only by
// the integers 1..n, so it works over any ring containing the rationals,
// polynomials included.  Returns the determinant and the adjugate, which
// satisfy a * adj == det * I.
template <ScalarRing R>
struct DetAdj {
  typename R::Elem det;
  Mat<typename R::Elem> adj;
};

template <ScalarRing R>
DetAdj<R> flv_det_adj(const R& ring, const Mat<typename R::Elem>& a) {
  const int n = a.n;
  if (n == 0) return {ring.one(), Mat<typename R::Elem>(0, ring.zero())};
  Mat<typename R::Elem> m = mat_zero(ring, n);
  typename R::Elem c = ring.one();
  for (int k = 1; k <= n; ++k) {
    // M_k = A * M_{k-1} + c_{k-1} * I
    m = mat_mul(ring, a, m);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.add(m.at(i, i), c);
    c = ring.mul(ring.neg(mat_trace(ring, mat_mul(ring, a, m))), ring.from_ratio(1, k));
  }
  // det = (-1)^n * c_0,  adj = (-1)^{n-1} * M_n
  typename R::Elem det = (n % 2 == 0) ? c : ring.neg(c);
  Mat<typename R::Elem> adj = (n % 2 == 1) ? std::move(m) : mat_neg(ring, m);
  return {std::move(det), std::move(adj)};
}

// Inverse via adjugate/determinant; throws config_error when the determinant
// is not a unit of the ring.
template <ScalarRing R>
Mat<typename R::Elem> mat_inverse_flv(const R& ring, const Mat<typename R::Elem>& a) {
  DetAdj<R> da = flv_det_adj(ring, a);
  if (!ring.is_unit(da.det)) throw config_error("matrix is not invertible over its ring");
  return mat_scale(ring, ring.invert(da.det), da.adj);
}

// Projects onto the antisymmetric part: (a - a^T)/2.  For IEEE doubles the
// result is exactly antisymmetric (x-y and y-x negate exactly, and the half
// scale is a power of two), so numerically assembled matrices can be cleaned
// up before a Pfaffian.
template <ScalarRing R>
Mat<typename R::Elem> mat_antisymmetrize(const R& ring, const Mat<typename R::Elem>& a) {
  Mat<typename R::Elem> r = a;
  const typename R::Elem half = ring.from_ratio(1, 2);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      r.at(i, j) = ring.mul(half, ring.sub(a.at(i, j), a.at(j, i)));
  return r;
}

template <ScalarRing R>
bool mat_is_antisymmetric(const R& ring, const Mat<typename R::Elem>& a) {
  for (int i = 0; i < a.n; ++i)
    for (int j = i; j < a.n; ++j)
      if (!ring.equal(a.at(i, j), ring.neg(a.at(j, i)))) return false;
  return true;
}

namespace detail {

// Pfaffian by expansion along the first row:
// Pf = sum_{j>=1} (-1)^{j+1} m_{0j} Pf(M without rows/cols {0,j}).
template <ScalarRing R>
typename R::Elem pf_recursive(const R& ring, const Mat<typename R::Elem>& m) {
  const int n = m.n;
  if (n == 0) return ring.one();
  if (n == 2) return m.at(0, 1);
  typename R::Elem acc = ring.zero();
  for (int j = 1; j < n; ++j) {
    const auto& top = m.at(0, j);
    if (ring.is_zero(top)) continue;
    Mat<typename R::Elem> sub(n - 2, ring.zero());
    int ri = 0;
    for (int i = 1; i < n; ++i) {
      if (i == j) continue;
      int rj = 0;
      for (int k = 1; k < n; ++k) {
        if (k == j) continue;
        sub.at(ri, rj) = m.at(i, k);
        ++rj;
      }
      ++ri;
    }
    typename R::Elem t = ring.mul(top, pf_recursive(ring, sub));
    acc = (j % 2 == 1) ? ring.add(acc, t) : ring.sub(acc, t);
  }
  return acc;
}

// Fraction-free Pfaffian condensation.  One step replaces the s x s matrix M
// by the (s-2) x (s-2) matrix with entries
//   b_{ij} = (m_{01} m_{ij} - m_{0i} m_{1j} + m_{0j} m_{1i}) / prev_pivot,
// which are Pfaffians of 4-row submatrices of the original divided by the
// accumulated pivot chain, so the divisions are exact over any integral
// domain while pivots stay nonzero.  A fully zero first row at any stage
// forces Pf = 0; a zero pivot with a nonzero row is repaired by swapping a
// row/column pair, flipping the sign.
template <ScalarRing R>
typename R::Elem pf_condense(const R& ring, Mat<typename R::Elem> cur) {
  bool negate = false;
  typename R::Elem prev = ring.one();
  while (cur.n > 2) {
    const int s = cur.n;
    int pick = -1;
    if (R::exact) {
      for (int j = 1; j < s; ++j) {
        if (!ring.is_zero(cur.at(0, j))) {
          pick = j;
          break;
        }
      }
    } else {
      double best = 0.0;
      for (int j = 1; j < s; ++j) {
        double v = ring.abs_estimate(cur.at(0, j));
        if (v > best) {
          best = v;
          pick = j;
        }
      }
    }
    if (pick < 0) return ring.zero();
    if (pick != 1) {
      for (int k = 0; k < s; ++k) std::swap(cur.at(1, k), cur.at(pick, k));
      for (int k = 0; k < s; ++k) std::swap(cur.at(k, 1), cur.at(k, pick));
      negate = !negate;
    }
    const typename R::Elem p = cur.at(0, 1);
    Mat<typename R::Elem> next(s - 2, ring.zero());
    for (int i = 2; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) {
        typename R::Elem v = ring.sub(ring.mul(p, cur.at(i, j)),
                                      ring.mul(cur.at(0, i), cur.at(1, j)));
        v = ring.add(v, ring.mul(cur.at(0, j), cur.at(1, i)));
        v = ring.divide(v, prev);
        next.at(i - 2, j - 2) = v;
        next.at(j - 2, i - 2) = ring.neg(v);
      }
    }
    prev = p;
    cur = std::move(next);
  }
  typename R::Elem result = (cur.n == 2) ? cur.at(0, 1) : ring.one();
  return negate ? ring.neg(result) : result;
}

}  // namespace detail

// Pfaffian of an antisymmetric matrix.  Odd dimension gives zero; the input
// is checked for antisymmetry.  Small matrices use first-row expansion;
// larger ones use fraction-free condensation, falling back to the expansion
// if an exact division ever fails (which the condensation identities rule
// out, but the fallback keeps the function total).
template <ScalarRing R>
typename R::Elem pfaffian(const R& ring, const Mat<typename R::Elem>& a) {
  if (!mat_is_antisymmetric(ring, a)) throw internal_error("pfaffian: matrix is not antisymmetric");
  const int n = a.n;
  if (n % 2 == 1) return ring.zero();
  if (n <= 8) return detail::pf_recursive(ring, a);
  try {
    return detail::pf_condense(ring, a);
  } catch (const internal_error&) {
    return detail::pf_recursive(ring, a);
  }
}

}  // namespace orthotau
