#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "orthotau/halfint.hpp"
#include "orthotau/poly.hpp"
#include "orthotau/rational.hpp"

using namespace orthotau;

TEST_CASE("rational parsing canonicalizes and validates") {
  CHECK(rational_to_string(rational_from_string("3/6")) == "1/2");
  CHECK(rational_to_string(rational_from_string("-4/2")) == "-2");
  CHECK(rational_to_string(rational_from_string("+7")) == "7");
  CHECK(rational_to_string(rational_from_string("0/5")) == "0");
  CHECK_THROWS_AS(rational_from_string(""), config_error);
  CHECK_THROWS_AS(rational_from_string("1/0"), config_error);
  CHECK_THROWS_AS(rational_from_string("1/2/3"), config_error);
  CHECK_THROWS_AS(rational_from_string("x"), config_error);
  CHECK_THROWS_AS(rational_from_string("1.5"), config_error);
  CHECK_THROWS_AS(rational_from_string("-"), config_error);
  CHECK_THROWS_AS(rational_from_string("3/"), config_error);
}

TEST_CASE("half-integers") {
  CHECK(part_plus_half(0).twice == 1);
  CHECK(part_plus_half(2).twice == 5);
  CHECK(part_plus_half(-1).twice == -1);
  CHECK(part_of(part_plus_half(7)) == 7);
  CHECK(weight_of(part_plus_half(2)) == 3);  // 5/2 contributes weight 3
  CHECK(weight_of(part_plus_half(0)) == 1);
  CHECK(sum_int(part_plus_half(0), part_plus_half(1)) == 2);  // 1/2 + 3/2
  CHECK(half_to_string(part_plus_half(1)) == "3/2");
  CHECK(half_to_string(HalfInt{-3}) == "-3/2");
  CHECK_THROWS_AS(half_from_twice(2), internal_error);
  CHECK_THROWS_AS(weight_of(HalfInt{-1}), internal_error);
  CHECK(part_plus_half(1) < part_plus_half(2));
}

TEST_CASE("variable sets validate names") {
  CHECK_THROWS_AS(make_varset({"a", "a"}), config_error);
  CHECK_THROWS_AS(make_varset({"2x"}), config_error);
  CHECK_THROWS_AS(make_varset({""}), config_error);
  auto v = make_varset({"t1", "t3", "a"});
  CHECK(v->size() == 3);
  CHECK(v->index_of("t3") == 1);
  CHECK_THROWS_AS(v->index_of("b"), config_error);
  CHECK(!v->find("b"));
}

namespace {

PolyScalar rnd_poly(VarSetPtr vars, std::mt19937& rng, int max_terms = 5) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expo(0, 3);
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  PolyScalar p = poly_zero(vars);
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Rational c(num(rng), den(rng));
    c.canonicalize();  // mpq_class(n, d) stores the fraction unreduced
    PolyScalar mono = poly_const(vars, c);
    for (std::size_t i = 0; i < vars->size(); ++i) {
      int e = expo(rng);
      if (e > 0) mono = poly_mul(mono, poly_pow(poly_var(vars, i), static_cast<unsigned>(e)));
    }
    p = poly_add(p, mono);
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic matches hand expansions") {
  auto v = make_varset({"a", "t1", "t3"});
  PolyScalar a = poly_var(v, 0);
  PolyScalar t1 = poly_var(v, 1);
  PolyScalar t3 = poly_var(v, 2);

  // (1 - a*t1/4)^2 = 1 - 1/2*a*t1 + 1/16*a^2*t1^2
  PolyScalar base = poly_sub(poly_one(v), poly_scale(poly_mul(a, t1), Rational(1, 4)));
  PolyScalar sq = poly_mul(base, base);
  CHECK(poly_equal(sq, poly_parse(v, "1 - 1/2*a*t1 + 1/16*a^2*t1^2")));
  CHECK(poly_to_text(sq) == "1 - 1/2*a*t1 + 1/16*a^2*t1^2");

  // (t1^3 - 12*t3)^2 / 576 = 1/576*t1^6 - 1/24*t1^3*t3 + 1/4*t3^2
  PolyScalar q = poly_parse(v, "(t1^3 - 12*t3)^2/576");
  PolyScalar manual = poly_add(
      poly_add(poly_scale(poly_pow(t1, 6), Rational(1, 576)),
               poly_scale(poly_mul(poly_pow(t1, 3), t3), Rational(-1, 24))),
      poly_scale(poly_pow(t3, 2), Rational(1, 4)));
  CHECK(poly_equal(q, manual));

  // zero annihilates, negation cancels
  CHECK(poly_is_zero(poly_mul(sq, poly_zero(v))));
  CHECK(poly_is_zero(poly_add(sq, poly_neg(sq))));
  CHECK(poly_to_text(poly_zero(v)) == "0");

  CHECK(poly_total_degree(sq) == 4);
  CHECK(poly_is_constant(poly_one(v)));
  CHECK(!poly_is_constant(t1));
  CHECK(poly_constant_value(poly_parse(v, "3/7")) == Rational(3, 7));
}

TEST_CASE("polynomial parser handles shapes and rejects junk") {
  auto v = make_varset({"x", "y"});
  CHECK(poly_equal(poly_parse(v, "-x + 2*y - 1"),
                   poly_sub(poly_add(poly_neg(poly_var(v, 0)),
                                     poly_scale(poly_var(v, 1), Rational(2))),
                            poly_one(v))));
  CHECK(poly_equal(poly_parse(v, "x*y/2"), poly_scale(poly_mul(poly_var(v, 0), poly_var(v, 1)),
                                                      Rational(1, 2))));
  CHECK(poly_equal(poly_parse(v, "(x + y)^2"),
                   poly_parse(v, "x^2 + 2*x*y + y^2")));
  CHECK(poly_equal(poly_parse(v, "(x - y)*(x + y)"), poly_parse(v, "x^2 - y^2")));
  CHECK_THROWS_AS(poly_parse(v, "z"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "x +"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "x/(y)"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "x/0"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "x^"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "(x"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "x y"), config_error);
  CHECK_THROWS_AS(poly_parse(v, "3.5"), config_error);
  CHECK_THROWS_AS(poly_parse(v, ""), config_error);
}

TEST_CASE("randomized ring laws and text round trips") {
  auto v = make_varset({"x", "y", "z"});
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 120; ++iter) {
    PolyScalar p = rnd_poly(v, rng);
    PolyScalar q = rnd_poly(v, rng);
    PolyScalar r = rnd_poly(v, rng);
    CHECK(poly_equal(poly_add(p, q), poly_add(q, p)));
    CHECK(poly_equal(poly_mul(p, q), poly_mul(q, p)));
    CHECK(poly_equal(poly_mul(p, poly_add(q, r)),
                     poly_add(poly_mul(p, q), poly_mul(p, r))));
    CHECK(poly_equal(poly_mul(poly_mul(p, q), r), poly_mul(p, poly_mul(q, r))));
    CHECK(poly_equal(poly_parse(v, poly_to_text(p)), p));
    if (!poly_is_zero(q)) {
      CHECK(poly_equal(poly_divide_exact(poly_mul(p, q), q), p));
    }
  }
}

TEST_CASE("exact division rejects non-divisible input") {
  auto v = make_varset({"x", "y"});
  PolyScalar p = poly_parse(v, "x^2 + y");
  PolyScalar q = poly_parse(v, "x + 1");
  CHECK_THROWS_AS(poly_divide_exact(poly_add(poly_mul(p, q), poly_one(v)), q), internal_error);
  CHECK_THROWS_AS(poly_divide_exact(p, poly_zero(v)), internal_error);
  // divisibility includes the coefficients: (x/2) / (x) = 1/2 is still exact
  CHECK(poly_equal(poly_divide_exact(poly_parse(v, "x/2"), poly_parse(v, "x")),
                   poly_parse(v, "1/2")));
}

TEST_CASE("weighted grading helpers") {
  auto v = make_varset({"t1", "t3", "a"});
  std::vector<int> w = {1, 3, 0};
  PolyScalar p = poly_parse(v, "a + t1^2 + a*t3 + t1*t3 + t1^6");
  CHECK(poly_weighted_degree(p, w) == 6);
  CHECK(poly_weighted_degree(poly_zero(v), w) == -1);
  CHECK(poly_equal(poly_truncate_weighted(p, w, 3),
                   poly_parse(v, "a + t1^2 + a*t3")));
  CHECK(poly_equal(poly_truncate_weighted(p, w, -1), p));
  CHECK(poly_equal(poly_weight_component(p, w, 4), poly_parse(v, "t1*t3")));
  CHECK(poly_equal(poly_weight_component(p, w, 0), poly_parse(v, "a")));
  CHECK(poly_is_zero(poly_weight_component(p, w, 5)));
}

TEST_CASE("mixing variable sets is rejected") {
  auto v1 = make_varset({"x"});
  auto v2 = make_varset({"y"});
  CHECK_THROWS_AS(poly_add(poly_one(v1), poly_one(v2)), internal_error);
  // same names in the same order are compatible even across instances
  auto v3 = make_varset({"x"});
  CHECK(poly_equal(poly_add(poly_var(v1, 0), poly_var(v3, 0)),
                   poly_scale(poly_var(v1, 0), Rational(2))));
}
