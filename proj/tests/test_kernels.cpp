#include <map>
#include <utility>
#include <vector>

#include "doctest.h"
#include "orthotau/algebra.hpp"
#include "orthotau/kernels.hpp"
#include "orthotau/poly.hpp"

using namespace orthotau;

namespace {

Mat<PolyScalar> to_poly_mat(const PolyRing& ring, const RMat& m) {
  Mat<PolyScalar> r = mat_zero(ring, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r.at(i, j) = ring.from_rational(m.at(i, j));
  return r;
}

PolyScalar pp(const PolyRing& ring, const std::string& text) {
  return poly_parse(ring.vars, text);
}

// Reconstructs (z - w) a(z,w) from the stored blocks and compares it with
// I - P(z) P(w)^{-1} coefficient by coefficient: the coefficient of z^i w^j
// of the left side is a^{i-1/2}_{-(j+1/2)} - a^{i+1/2}_{-(j-1/2)}.
template <ScalarRing R>
void check_a_reconstruction(const R& ring, const KernelBlocks<typename R::Elem>& kb,
                            const MatSeries<typename R::Elem>& psi, long max_weight) {
  MatSeries<typename R::Elem> inv =
      series_inverse(ring, psi, static_cast<int>(max_weight > 0 ? max_weight - 1 : 0));
  for (long i = 0; i + 0 <= max_weight; ++i)
    for (long j = 0; i + j <= max_weight && j <= max_weight - 1; ++j) {
      Mat<typename R::Elem> lhs = mat_zero(ring, kb.n);
      if (i >= 1 && 2 * i - 1 + 2 * j + 1 <= 2 * kb.max_weight)
        lhs = kernel_block(ring, kb, half_from_twice(static_cast<int>(2 * i - 1)),
                           half_from_twice(static_cast<int>(2 * j + 1)));
      if (j >= 1)
        lhs = mat_sub(ring, lhs,
                      kernel_block(ring, kb, half_from_twice(static_cast<int>(2 * i + 1)),
                                   half_from_twice(static_cast<int>(2 * j - 1))));
      Mat<typename R::Elem> rhs =
          mat_neg(ring, mat_mul(ring, series_coeff(ring, psi, static_cast<int>(i)),
                                series_coeff(ring, inv, static_cast<int>(j))));
      if (i == 0 && j == 0) rhs = mat_add(ring, rhs, mat_identity(ring, kb.n));
      // The stored blocks live in the quotient by the grading cutoff; bring
      // the freshly multiplied side into the same quotient before comparing.
      if (psi.grading_cutoff >= 0) rhs = mat_truncate_degree(ring, rhs, psi.grading_cutoff);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(mat_equal(ring, lhs, rhs));
    }
}

// Same reconstruction for the outside kernel: the coefficient of z^{-i} w^{-j}
// of (z - w) d(z,w) is d^{-(i+1/2)}_{j-1/2} - d^{-(i-1/2)}_{j+1/2}, and equals
// the corresponding coefficient of M(z) M(w)^{-1} - I.
template <ScalarRing R>
void check_d_reconstruction(const R& ring, const KernelBlocks<typename R::Elem>& kb,
                            const MatSeries<typename R::Elem>& psi, long window) {
  MatSeries<typename R::Elem> rev = series_reverse(psi);
  MatSeries<typename R::Elem> revinv = series_reverse(series_neumann_inverse(ring, psi));
  for (long i = 0; i <= window; ++i)
    for (long j = 0; j <= window; ++j) {
      Mat<typename R::Elem> lhs = mat_zero(ring, kb.n);
      if (j >= 1)
        lhs = kernel_block(ring, kb, half_from_twice(static_cast<int>(2 * j - 1)),
                           half_from_twice(static_cast<int>(2 * i + 1)));
      if (i >= 1)
        lhs = mat_sub(ring, lhs,
                      kernel_block(ring, kb, half_from_twice(static_cast<int>(2 * j + 1)),
                                   half_from_twice(static_cast<int>(2 * i - 1))));
      Mat<typename R::Elem> rhs = mat_mul(ring, series_coeff(ring, rev, static_cast<int>(i)),
                                          series_coeff(ring, revinv, static_cast<int>(j)));
      if (i == 0 && j == 0) rhs = mat_sub(ring, rhs, mat_identity(ring, kb.n));
      if (psi.grading_cutoff >= 0) rhs = mat_truncate_degree(ring, rhs, psi.grading_cutoff);
      CAPTURE(i);
      CAPTURE(j);
      CHECK(mat_equal(ring, lhs, rhs));
    }
}

}  // namespace

TEST_CASE("identity factors produce empty exhausted kernels") {
  const RationalRing q{};
  MatSeries<Rational> id = series_identity(q, 2);

  KernelBlocks<Rational> a = build_a(q, id, 5);
  CHECK(a.kind == KernelKind::A);
  CHECK(a.blocks.empty());
  CHECK(a.exhausted);
  CHECK(a.max_weight == 5);
  CHECK(mat_is_zero(q, kernel_block(q, a, half_from_twice(1), half_from_twice(1))));
  // Exhausted kernels may be read at any index.
  CHECK(mat_is_zero(q, kernel_block(q, a, half_from_twice(19), half_from_twice(7))));

  KernelBlocks<Rational> d = build_d(q, id);
  CHECK(d.kind == KernelKind::D);
  CHECK(d.blocks.empty());
  CHECK(d.exhausted);
  CHECK(d.max_weight == 0);
}

TEST_CASE("scalar geometric inside factor: blocks, window guard, antisymmetry failure") {
  const PolyRing ring(make_varset({"t"}), {1});
  MatSeries<PolyScalar> psi = series_identity(ring, 1);
  Mat<PolyScalar> c1(1, pp(ring, "t"));
  series_set_coeff(ring, psi, 1, c1);

  KernelBlocks<PolyScalar> a = build_a(ring, psi, 2);
  CHECK_FALSE(a.exhausted);  // the inverse of 1 + t z never terminates
  CHECK(a.max_weight == 2);

  CHECK(poly_equal(kernel_block(ring, a, half_from_twice(1), half_from_twice(1)).at(0, 0),
                   pp(ring, "-t")));
  CHECK(poly_equal(kernel_block(ring, a, half_from_twice(1), half_from_twice(3)).at(0, 0),
                   pp(ring, "t^2")));
  CHECK(mat_is_zero(ring, kernel_block(ring, a, half_from_twice(3), half_from_twice(1))));
  CHECK_FALSE(kernel_block_stored(a, 3, 1));
  // p + q beyond the truncation of a non-exhausted kernel is a logic error.
  CHECK_THROWS_AS(kernel_block(ring, a, half_from_twice(3), half_from_twice(3)), internal_error);

  check_a_reconstruction(ring, a, psi, 2);

  // 1 + t z is not orthogonal for S = (1): the diagonal block violates.
  Mat<PolyScalar> s = mat_identity(ring, 1);
  std::vector<AntisymmetryViolation> bad = check_antisymmetry(ring, a, s);
  REQUIRE(!bad.empty());
  CHECK(bad.front().twice_p == 1);
  CHECK(bad.front().twice_q == 1);
  CHECK(bad.front().row == 1);
  CHECK(bad.front().col == 1);
  CHECK(bad.front().residual == "-2*t");
}

TEST_CASE("build_a rejects bad inputs") {
  const RationalRing q{};
  MatSeries<Rational> id = series_identity(q, 2);
  CHECK_THROWS_AS(build_a(q, id, -1), config_error);

  MatSeries<Rational> pole = series_identity(q, 2);
  series_set_coeff(q, pole, -1, mat_identity(q, 2));
  CHECK_THROWS_AS(build_a(q, pole, 2), config_error);

  // A window smaller than the requested weight cannot divide by (z - w).
  MatSeries<Rational> narrow = series_identity(q, 2);
  series_set_coeff(q, narrow, 1, mat_identity(q, 2));
  narrow.exact_hi = false;  // coefficients above z^1 unknown
  CHECK_THROWS_AS(build_a(q, narrow, 2), numeric_error);
  CHECK_NOTHROW(build_a(q, narrow, 1));
}

TEST_CASE("nilpotent outside factor reproduces the dressing blocks") {
  // X = a (e21 + e32) on the rank-1 odd orthogonal algebra.
  const PolyRing ring(make_varset({"a"}), {0});
  const ChevalleyData g = build_algebra(make_algebra_spec(Series::B, 1));
  Mat<PolyScalar> x = mat_zero(ring, 3);
  x.at(1, 0) = pp(ring, "a");
  x.at(2, 1) = pp(ring, "a");
  CHECK(is_s_skew(ring, x, to_poly_mat(ring, g.S)));

  MatSeries<PolyScalar> psi = minus_wave(ring, x);
  CHECK(is_s_orthogonal(ring, psi, to_poly_mat(ring, g.S)));

  KernelBlocks<PolyScalar> d = build_d(ring, psi);
  CHECK(d.exhausted);
  CHECK(d.max_weight == 2);
  CHECK(d.blocks.size() == 3);

  // d^{-1/2}_{1/2} = -x.
  Mat<PolyScalar> b11 = kernel_block(ring, d, half_from_twice(1), half_from_twice(1));
  CHECK(poly_equal(b11.at(1, 0), pp(ring, "-a")));
  CHECK(poly_equal(b11.at(2, 1), pp(ring, "-a")));
  CHECK(poly_equal(b11.at(2, 0), pp(ring, "0")));
  // d^{-1/2}_{3/2} = +x^2/2, stored at (p, q) = (3/2, 1/2).
  Mat<PolyScalar> b31 = kernel_block(ring, d, half_from_twice(3), half_from_twice(1));
  CHECK(poly_equal(b31.at(2, 0), pp(ring, "a^2/2")));
  CHECK(poly_equal(b31.at(1, 0), pp(ring, "0")));
  // d^{-3/2}_{1/2} = -x^2/2, stored at (p, q) = (1/2, 3/2).
  Mat<PolyScalar> b13 = kernel_block(ring, d, half_from_twice(1), half_from_twice(3));
  CHECK(poly_equal(b13.at(2, 0), pp(ring, "-a^2/2")));

  CHECK(check_antisymmetry(ring, d, to_poly_mat(ring, g.S)).empty());
  check_d_reconstruction(ring, d, psi, 3);
}

TEST_CASE("inside factor of the rank-1 hierarchy satisfies orthogonal antisymmetry") {
  const PolyRing ring(make_varset({"t1", "t3", "t5"}), {1, 3, 5});
  const ChevalleyData g = build_algebra(make_algebra_spec(Series::B, 1));
  MatSeries<PolyScalar> lam = series_from_rational(ring, shift_matrix(g.spec));
  MatSeries<PolyScalar> psi = plus_wave(
      ring, lam,
      {{1, pp(ring, "t1")}, {3, pp(ring, "t3")}, {5, pp(ring, "t5")}},
      /*grading_cutoff=*/8);
  CHECK(is_s_orthogonal(ring, psi, to_poly_mat(ring, g.S)));

  KernelBlocks<PolyScalar> a = build_a(ring, psi, 4);
  CHECK_FALSE(a.blocks.empty());
  CHECK(check_antisymmetry(ring, a, to_poly_mat(ring, g.S)).empty());
  check_a_reconstruction(ring, a, psi, 4);
}

TEST_CASE("build_d contracts: analyticity, identity at infinity, window") {
  const RationalRing q{};

  MatSeries<Rational> bad_support = series_identity(q, 2);
  series_set_coeff(q, bad_support, 1, mat_identity(q, 2));
  CHECK_THROWS_AS(build_d(q, bad_support), config_error);

  MatSeries<Rational> not_id = series_identity(q, 2);
  Mat<Rational> two = mat_scale(q, Rational(2), mat_identity(q, 2));
  series_set_coeff(q, not_id, 0, two);
  CHECK_THROWS_AS(build_d(q, not_id), config_error);

  // Unknown lower tail: automatic support detection must be refused, and an
  // explicit truncation deeper than the window must fail.
  Mat<Rational> nil = mat_zero(q, 2);
  nil.at(1, 0) = Rational(1);
  MatSeries<Rational> psi = series_identity(q, 2);
  series_set_coeff(q, psi, -1, nil);
  MatSeries<Rational> trimmed = psi;
  trimmed.exact_lo = false;
  CHECK_THROWS_AS(build_d(q, trimmed), config_error);
  CHECK_THROWS_AS(build_d(q, trimmed, 2), numeric_error);
  CHECK_NOTHROW(build_d(q, trimmed, 1));

  // Fully known nilpotent factor: explicit truncation below the support marks
  // the kernel non-exhausted even though the inverse is complete.
  Mat<Rational> wide = mat_zero(q, 3);
  wide.at(1, 0) = Rational(1);
  wide.at(2, 1) = Rational(1);
  MatSeries<Rational> psi3 = series_exp(q, series_from_term(q, wide, -1), 5);
  KernelBlocks<Rational> full = build_d(q, psi3);
  CHECK(full.exhausted);
  CHECK(full.max_weight == 2);
  KernelBlocks<Rational> cut = build_d(q, psi3, 1);
  CHECK_FALSE(cut.exhausted);
  CHECK(cut.max_weight == 1);
  CHECK(cut.blocks.count({1, 1}) == 1);
  CHECK(cut.blocks.count({3, 1}) == 0);

  // Non-nilpotent outside factor: automatic mode cannot terminate, explicit
  // truncation still yields the window it asked for.
  MatSeries<Rational> geom = series_identity(q, 1);
  Mat<Rational> minus_one(1, Rational(-1));
  series_set_coeff(q, geom, -1, minus_one);
  CHECK_THROWS_AS(build_d(q, geom), numeric_error);
  KernelBlocks<Rational> g2 = build_d(q, geom, 2);
  CHECK_FALSE(g2.exhausted);
  CHECK(g2.max_weight == 2);
  // M = 1 - 1/z, M^{-1} = 1 + 1/z + 1/z^2 + ...; d^{-1/2}_{1/2} = -(-1) * 1
  // gives +...: reversed series C = 1 - z, D = 1 + z + z^2.
  // d^{-1/2}_{1/2} = C_0 D_1 = 1.
  CHECK(kernel_block(q, g2, half_from_twice(1), half_from_twice(1)).at(0, 0) == Rational(1));
  // d^{-1/2}_{3/2} = C_0 D_2 = 1; d^{-3/2}_{1/2} = C_1 D_1 + C_0 D_2 = 0.
  CHECK(kernel_block(q, g2, half_from_twice(3), half_from_twice(1)).at(0, 0) == Rational(1));
  CHECK(kernel_block(q, g2, half_from_twice(1), half_from_twice(3)).at(0, 0) == Rational(0));
}

TEST_CASE("broken generator produces antisymmetry violations") {
  const RationalRing q{};
  const ChevalleyData g = build_algebra(make_algebra_spec(Series::B, 1));
  Mat<Rational> x = mat_zero(q, 3);
  x.at(1, 0) = Rational(1);  // e21 alone is not in the orthogonal algebra
  CHECK_FALSE(is_s_skew(q, x, g.S));
  MatSeries<Rational> psi = minus_wave(q, x);
  KernelBlocks<Rational> d = build_d(q, psi);
  CHECK_FALSE(check_antisymmetry(q, d, g.S).empty());
}
