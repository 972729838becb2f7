#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <string>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/poly.hpp"
#include "orthotau/rational.hpp"

namespace orthotau {

// Uniform coefficient-ring interface used by the matrix, linear-algebra and
// series templates.  `exact` distinguishes symbolic rings (rationals,
// polynomials) from floating-point rings; exact rings use first-nonzero
// pivoting for determinism, floating-point rings pivot by magnitude.
template <class R>
concept ScalarRing = requires(const R r, const typename R::Elem& a, const typename R::Elem& b) {
  typename R::Elem;
  { R::exact } -> std::convertible_to<bool>;
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.from_int(static_cast<long>(0)) } -> std::same_as<typename R::Elem>;
  { r.from_ratio(static_cast<long>(0), static_cast<long>(1)) } -> std::same_as<typename R::Elem>;
  { r.from_rational(Rational(0)) } -> std::same_as<typename R::Elem>;
  { r.add(a, b) } -> std::same_as<typename R::Elem>;
  { r.sub(a, b) } -> std::same_as<typename R::Elem>;
  { r.mul(a, b) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.equal(a, b) } -> std::same_as<bool>;
  { r.is_unit(a) } -> std::same_as<bool>;
  { r.invert(a) } -> std::same_as<typename R::Elem>;
  { r.divide(a, b) } -> std::same_as<typename R::Elem>;
  { r.truncate_degree(a, static_cast<int>(0)) } -> std::same_as<typename R::Elem>;
  { r.to_text(a) } -> std::same_as<std::string>;
  { r.abs_estimate(a) } -> std::same_as<double>;
};

// Exact rational scalars.
struct RationalRing {
  using Elem = Rational;
  static constexpr bool exact = true;

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  Elem from_int(long v) const { return Rational(v); }
  Elem from_ratio(long num, long den) const {
    if (den == 0) throw internal_error("from_ratio: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Elem from_rational(const Rational& v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_unit(const Elem& a) const { return a != 0; }
  Elem invert(const Elem& a) const {
    if (a == 0) throw internal_error("invert: zero rational");
    return Rational(1) / a;
  }
  Elem divide(const Elem& a, const Elem& b) const {
    if (b == 0) throw internal_error("divide: zero rational divisor");
    return a / b;
  }
  Elem truncate_degree(const Elem& a, int) const { return a; }
  std::string to_text(const Elem& a) const { return rational_to_string(a); }
  double abs_estimate(const Elem& a) const { return std::abs(a.get_d()); }
};

// Exact multivariate polynomial scalars over a fixed variable set.  `weights`
// gives the grading weight of each variable (same length as the variable
// set); truncate_degree drops monomials above a weighted-degree cutoff.
struct PolyRing {
  using Elem = PolyScalar;
  static constexpr bool exact = true;

  VarSetPtr vars;
  std::vector<int> weights;

  PolyRing(VarSetPtr v, std::vector<int> w) : vars(std::move(v)), weights(std::move(w)) {
    if (!vars) throw internal_error("PolyRing: null variable set");
    if (weights.size() != vars->size())
      throw internal_error("PolyRing: weight vector size mismatch");
  }

  explicit PolyRing(VarSetPtr v) : vars(std::move(v)) {
    if (!vars) throw internal_error("PolyRing: null variable set");
    weights.assign(vars->size(), 1);
  }

  Elem zero() const { return poly_zero(vars); }
  Elem one() const { return poly_one(vars); }
  Elem from_int(long v) const { return poly_const(vars, Rational(v)); }
  Elem from_ratio(long num, long den) const {
    if (den == 0) throw internal_error("from_ratio: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return poly_const(vars, r);
  }
  Elem from_rational(const Rational& v) const { return poly_const(vars, v); }
  Elem add(const Elem& a, const Elem& b) const { return poly_add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return poly_sub(a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return poly_mul(a, b); }
  Elem neg(const Elem& a) const { return poly_neg(a); }
  bool is_zero(const Elem& a) const { return poly_is_zero(a); }
  bool equal(const Elem& a, const Elem& b) const { return poly_equal(a, b); }
  bool is_unit(const Elem& a) const { return poly_is_constant(a) && !poly_is_zero(a); }
  Elem invert(const Elem& a) const {
    if (!is_unit(a)) throw internal_error("invert: polynomial is not a unit");
    return poly_const(vars, Rational(1) / poly_constant_value(a));
  }
  Elem divide(const Elem& a, const Elem& b) const { return poly_divide_exact(a, b); }
  Elem truncate_degree(const Elem& a, int cutoff) const {
    return poly_truncate_weighted(a, weights, cutoff);
  }
  std::string to_text(const Elem& a) const { return poly_to_text(a); }
  double abs_estimate(const Elem& a) const { return poly_is_zero(a) ? 0.0 : 1.0; }
};

// Floating-point complex scalars.  `tol` is the absolute threshold used by
// is_zero/equal; arithmetic itself is ordinary IEEE double.
struct ComplexRing {
  using Elem = std::complex<double>;
  static constexpr bool exact = false;

  double tol = 1e-12;

  Elem zero() const { return {0.0, 0.0}; }
  Elem one() const { return {1.0, 0.0}; }
  Elem from_int(long v) const { return {static_cast<double>(v), 0.0}; }
  Elem from_ratio(long num, long den) const {
    if (den == 0) throw internal_error("from_ratio: zero denominator");
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  Elem from_rational(const Rational& v) const { return {v.get_d(), 0.0}; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return std::abs(a) <= tol; }
  bool equal(const Elem& a, const Elem& b) const { return std::abs(a - b) <= tol; }
  bool is_unit(const Elem& a) const { return std::abs(a) > tol; }
  Elem invert(const Elem& a) const {
    if (std::abs(a) == 0.0) throw numeric_error("invert: zero complex value");
    return 1.0 / a;
  }
  Elem divide(const Elem& a, const Elem& b) const {
    if (std::abs(b) == 0.0) throw numeric_error("divide: zero complex divisor");
    return a / b;
  }
  Elem truncate_degree(const Elem& a, int) const { return a; }
  std::string to_text(const Elem& a) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", a.real(), a.imag());
    return buf;
  }
  double abs_estimate(const Elem& a) const { return std::abs(a); }
};

static_assert(ScalarRing<RationalRing>);
static_assert(ScalarRing<PolyRing>);
static_assert(ScalarRing<ComplexRing>);

}  // namespace orthotau
