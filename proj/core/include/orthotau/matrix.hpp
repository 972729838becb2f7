#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/ring.hpp"

namespace orthotau {

// Dense square matrix, row-major.  Elements are ring scalars; all operations
// are free functions parameterized by the ring so the same code serves exact
// and floating-point coefficients.
template <class Elem>
struct Mat {
  int n = 0;
  std::vector<Elem> e;

  Mat() = default;
  Mat(int n_, const Elem& fill) : n(n_), e(static_cast<std::size_t>(n_) * n_, fill) {
    if (n_ < 0) throw internal_error("Mat: negative dimension");
  }

  Elem& at(int i, int j) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw internal_error("Mat::at: index out of range");
    return e[static_cast<std::size_t>(i) * n + j];
  }
  const Elem& at(int i, int j) const {
    if (i < 0 || i >= n || j < 0 || j >= n) throw internal_error("Mat::at: index out of range");
    return e[static_cast<std::size_t>(i) * n + j];
  }
};

template <ScalarRing R>
Mat<typename R::Elem> mat_zero(const R& ring, int n) {
  return Mat<typename R::Elem>(n, ring.zero());
}

template <ScalarRing R>
Mat<typename R::Elem> mat_identity(const R& ring, int n) {
  Mat<typename R::Elem> m(n, ring.zero());
  for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

template <class Elem>
void check_same_dim(const Mat<Elem>& a, const Mat<Elem>& b) {
  if (a.n != b.n) throw internal_error("matrix dimension mismatch");
}

template <ScalarRing R>
Mat<typename R::Elem> mat_add(const R& ring, const Mat<typename R::Elem>& a,
                              const Mat<typename R::Elem>& b) {
  check_same_dim(a, b);
  Mat<typename R::Elem> r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = ring.add(a.e[i], b.e[i]);
  return r;
}

template <ScalarRing R>
Mat<typename R::Elem> mat_sub(const R& ring, const Mat<typename R::Elem>& a,
                              const Mat<typename R::Elem>& b) {
  check_same_dim(a, b);
  Mat<typename R::Elem> r = a;
  for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = ring.sub(a.e[i], b.e[i]);
  return r;
}

template <ScalarRing R>
Mat<typename R::Elem> mat_neg(const R& ring, const Mat<typename R::Elem>& a) {
  Mat<typename R::Elem> r = a;
  for (auto& x : r.e) x = ring.neg(x);
  return r;
}

template <ScalarRing R>
Mat<typename R::Elem> mat_scale(const R& ring, const typename R::Elem& c,
                                const Mat<typename R::Elem>& a) {
  Mat<typename R::Elem> r = a;
  for (auto& x : r.e) x = ring.mul(c, x);
  return r;
}

template <ScalarRing R>
Mat<typename R::Elem> mat_mul(const R& ring, const Mat<typename R::Elem>& a,
                              const Mat<typename R::Elem>& b) {
  check_same_dim(a, b);
  const int n = a.n;
  Mat<typename R::Elem> r(n, ring.zero());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const auto& aik = a.at(i, k);
      if (ring.is_zero(aik)) continue;
      for (int j = 0; j < n; ++j) {
        const auto& bkj = b.at(k, j);
        if (ring.is_zero(bkj)) continue;
        r.at(i, j) = ring.add(r.at(i, j), ring.mul(aik, bkj));
      }
    }
  }
  return r;
}

template <ScalarRing R>
bool mat_is_zero(const R& ring, const Mat<typename R::Elem>& a) {
  for (const auto& x : a.e)
    if (!ring.is_zero(x)) return false;
  return true;
}

template <ScalarRing R>
bool mat_equal(const R& ring, const Mat<typename R::Elem>& a, const Mat<typename R::Elem>& b) {
  if (a.n != b.n) return false;
  for (std::size_t i = 0; i < a.e.size(); ++i)
    if (!ring.equal(a.e[i], b.e[i])) return false;
  return true;
}

template <class Elem>
Mat<Elem> mat_transpose(const Mat<Elem>& a) {
  Mat<Elem> r = a;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) r.at(i, j) = a.at(j, i);
  return r;
}

template <ScalarRing R>
typename R::Elem mat_trace(const R& ring, const Mat<typename R::Elem>& a) {
  typename R::Elem t = ring.zero();
  for (int i = 0; i < a.n; ++i) t = ring.add(t, a.at(i, i));
  return t;
}

// Adds c * E_{ij} using 1-based row/column indices, matching the elementary
// matrix conventions used throughout the algebra construction.
template <ScalarRing R>
void add_entry(const R& ring, Mat<typename R::Elem>& m, int i1, int j1,
               const typename R::Elem& c) {
  m.at(i1 - 1, j1 - 1) = ring.add(m.at(i1 - 1, j1 - 1), c);
}

template <ScalarRing R>
Mat<typename R::Elem> mat_truncate_degree(const R& ring, const Mat<typename R::Elem>& a,
                                          int cutoff) {
  Mat<typename R::Elem> r = a;
  for (auto& x : r.e) x = ring.truncate_degree(x, cutoff);
  return r;
}

// Largest abs_estimate over all entries; a cheap magnitude proxy used by
// numeric diagnostics.
template <ScalarRing R>
double mat_abs_max(const R& ring, const Mat<typename R::Elem>& a) {
  double best = 0.0;
  for (const auto& x : a.e) best = std::max(best, ring.abs_estimate(x));
  return best;
}

}  // namespace orthotau
