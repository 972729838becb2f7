#pragma once

// Matrix realizations of the twisted-affine orthogonal families used by the
// tau engines: the odd series (so(2l+1), "B") and the even series (so(2l),
// "D").  build_algebra constructs the Weyl generator triples (E_i, F_i, H_i),
// the signed antidiagonal involution S, and the pairing matrix realized by
// the commutators, and verifies every structural identity before returning.
//
// Conventions:
//  * Generator index i runs 0..rank; index 0 is the affine node.  The stored
//    matrices are the constant parts; in the loop algebra the affine node
//    carries e_0 = z*E[0] and f_0 = z^{-1}*F[0].
//  * Elementary-matrix positions are 1-based in the construction formulas
//    (add_entry takes 1-based indices).
//  * cartan[i][j] is defined by [H_i, E_j] = cartan[i][j] * E_j as realized
//    by the constructed matrices.  For the odd series the short-node row
//    comes out as (..., -1, 1): the defining representation realizes that
//    coroot at half the normalization of the abstract Cartan matrix, whose
//    corresponding row would read (..., -2, 2).  The commutator-realized
//    matrix is the one every downstream identity in this library uses.

#include <string>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/matrix.hpp"
#include "orthotau/rational.hpp"
#include "orthotau/ring.hpp"
#include "orthotau/series.hpp"

namespace orthotau {

enum class Series { B, D };

Series series_from_string(const std::string& s);
std::string series_to_string(Series s);

struct AlgebraSpec {
  Series series = Series::B;
  int rank = 1;  // l

  // Matrix size N: 2l+1 for the odd series, 2l for the even series.
  int size() const { return series == Series::B ? 2 * rank + 1 : 2 * rank; }
  // Coxeter number h: 2l for the odd series, 2l-2 for the even series.
  int coxeter() const { return series == Series::B ? 2 * rank : 2 * rank - 2; }
};

// Validates the (series, rank) combination: rank >= 1 for B, rank >= 2 for D.
// Throws config_error otherwise.
AlgebraSpec make_algebra_spec(Series series, int rank);

using RMat = Mat<Rational>;

struct ChevalleyData {
  AlgebraSpec spec;
  std::vector<RMat> E, F, H;  // index 0..rank
  RMat S;                     // signed antidiagonal involution, S^2 = I
  std::vector<std::vector<long>> cartan;  // realized pairing (see header note)
};

// Builds the generator data for the given spec and verifies at construction:
//   S^T = S, S^2 = I;
//   G^T = -S G S for every generator G;
//   [H_i, E_j] = cartan[i][j] E_j, [H_i, F_j] = -cartan[i][j] F_j,
//   [E_i, F_j] = delta_ij H_i  (all exact).
// Any violation is an internal_error (the construction data is fixed).
ChevalleyData build_algebra(const AlgebraSpec& spec);

// The cyclic shift element Lambda = sum_{i=1..rank} E_i + z*E_0, supported on
// z-powers {0, 1}.  Satisfies Lambda^{1+h} = z * Lambda whenever the algebra
// is simple (every B rank; D ranks >= 3).  so(4) splits into two commuting
// ideals and its shift element is not cyclic (see the algebra tests).
MatSeries<Rational> shift_matrix(const AlgebraSpec& spec);

// Group-level predicate: A(z) * S * A(z)^T = S identically on the window of
// z-powers where the product is fully known.  Requires a nonempty known
// window (internal_error otherwise).
template <ScalarRing R>
bool is_s_orthogonal(const R& ring, const MatSeries<typename R::Elem>& a,
                     const Mat<typename R::Elem>& s) {
  if (a.n != s.n) throw internal_error("is_s_orthogonal: size mismatch");
  MatSeries<typename R::Elem> sser =
      series_from_term(ring, s, 0, a.grading_cutoff);
  MatSeries<typename R::Elem> p =
      series_mul(ring, series_mul(ring, a, sser), series_transpose(a));
  // The z^0 coefficient carries the defining identity; every other stored
  // coefficient must vanish.  Coefficients absent from storage are zero on
  // the known window, so scanning stored ones is exhaustive.
  if (!series_coeff_known(p, 0))
    throw internal_error("is_s_orthogonal: z^0 outside the reliable window");
  for (const auto& [k, m] : p.coeffs)
    if (k != 0 && !mat_is_zero(ring, m)) return false;
  return mat_equal(ring, series_coeff(ring, p, 0), s);
}

// Algebra-level predicate: X^T S + S X = 0 per z-power (equivalently
// X^T = -S X S since S^2 = I), checked on the fully-known window of X.
template <ScalarRing R>
bool is_s_skew(const R& ring, const MatSeries<typename R::Elem>& x,
               const Mat<typename R::Elem>& s) {
  if (x.n != s.n) throw internal_error("is_s_skew: size mismatch");
  // Zero coefficients satisfy the condition trivially, so only stored
  // coefficients need checking.
  for (const auto& [k, c] : x.coeffs) {
    Mat<typename R::Elem> lhs = mat_add(
        ring, mat_mul(ring, mat_transpose(c), s), mat_mul(ring, s, c));
    if (!mat_is_zero(ring, lhs)) return false;
  }
  return true;
}

// Constant-matrix overload of the algebra-level predicate.
template <ScalarRing R>
bool is_s_skew(const R& ring, const Mat<typename R::Elem>& x,
               const Mat<typename R::Elem>& s) {
  MatSeries<typename R::Elem> ser = series_from_term(ring, x, 0);
  return is_s_skew(ring, ser, s);
}

}  // namespace orthotau
