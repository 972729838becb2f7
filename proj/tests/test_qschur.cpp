#include <string>
#include <vector>

#include "doctest.h"
#include "orthotau/poly.hpp"
#include "orthotau/qschur.hpp"
#include "orthotau/ring.hpp"

using namespace orthotau;

namespace {

const PolyRing& tring() {
  static const PolyRing ring(make_varset({"t1", "t3", "t5"}), {1, 3, 5});
  return ring;
}

const TimeList& times() {
  static const TimeList t = {{0, 1}, {1, 3}, {2, 5}};
  return t;
}

PolyScalar pp(const std::string& text) { return poly_parse(tring().vars, text); }

PolyScalar q_of(const std::vector<int>& parts) {
  return q_lambda(tring(), times(), StrictPartition{parts});
}

}  // namespace

TEST_CASE("one-row generating coefficients") {
  std::vector<PolyScalar> qs = q_sequence(tring(), times(), 6);
  REQUIRE(qs.size() == 7);
  CHECK(poly_equal(qs[0], pp("1")));
  CHECK(poly_equal(qs[1], pp("t1")));
  CHECK(poly_equal(qs[2], pp("t1^2/2")));
  CHECK(poly_equal(qs[3], pp("t1^3/6 + t3")));
  CHECK(poly_equal(qs[4], pp("t1^4/24 + t1*t3")));
  CHECK(poly_equal(qs[5], pp("t1^5/120 + t1^2*t3/2 + t5")));
  CHECK(poly_equal(qs[6], pp("t1^6/720 + t1^3*t3/6 + t3^2/2 + t1*t5")));
}

TEST_CASE("two-row values and antisymmetry") {
  CHECK(poly_equal(q_pair(tring(), times(), 1, 0), pp("t1")));
  CHECK(poly_equal(q_pair(tring(), times(), 2, 0), pp("t1^2/2")));
  CHECK(poly_equal(q_pair(tring(), times(), 2, 1), pp("t1^3/6 - 2*t3")));
  CHECK(poly_equal(q_pair(tring(), times(), 4, 1), pp("t1^5/40 - 2*t5")));
  CHECK(poly_equal(q_pair(tring(), times(), 4, 2), pp("(t1^3 - 12*t3)^2/144")));
  CHECK(poly_equal(q_pair(tring(), times(), 5, 1),
                   pp("t1^6/180 + t1^3*t3/6 - t1*t5 - t3^2")));

  CHECK(poly_equal(q_pair(tring(), times(), 1, 2), poly_neg(q_pair(tring(), times(), 2, 1))));
  CHECK_THROWS_AS(q_pair(tring(), times(), 3, 3), config_error);
  CHECK_THROWS_AS(q_pair(tring(), times(), -1, 0), config_error);
}

TEST_CASE("partition values, padding, and grading") {
  CHECK(poly_equal(q_of({}), pp("1")));
  CHECK(poly_equal(q_of({0}), pp("1")));
  CHECK(poly_equal(q_of({3}), pp("t1^3/6 + t3")));  // single row equals q_3
  CHECK(poly_equal(q_of({2, 1}), q_pair(tring(), times(), 2, 1)));
  CHECK(poly_equal(q_of({2, 1, 0}), q_of({2, 1})));  // trailing zero is absorbed
  CHECK(poly_equal(q_of({4}), q_pair(tring(), times(), 4, 0)));

  // Four-row value via the Pfaffian: the combined-label example.
  CHECK(poly_equal(q_of({3, 2, 1, 0}),
                   pp("(t1^6 - 60*t3*t1^3 + 720*t5*t1 - 720*t3^2)/360")));

  // Q-functions are graded by the partition size in the weighted ring.
  for (const std::vector<int>& parts :
       {std::vector<int>{1}, {2, 1}, {4, 2}, {5, 1}, {3, 2, 1, 0}, {9, 0}}) {
    long long size = 0;
    for (int p : parts) size += p;
    CHECK(poly_weighted_degree(q_of(parts), tring().weights) == size);
    // Homogeneity: no monomial below the top weight either.
    CHECK(poly_equal(q_of(parts),
                     poly_weight_component(q_of(parts), tring().weights, size)));
  }

  CHECK_THROWS_AS(q_of({2, 2}), config_error);
  CHECK_THROWS_AS(q_of({1, 2}), config_error);
}

TEST_CASE("time declarations are validated") {
  CHECK_THROWS_AS(q_sequence(tring(), {{0, 1}, {1, 1}}, 3), config_error);   // duplicate order
  CHECK_THROWS_AS(q_sequence(tring(), {{7, 1}}, 3), config_error);           // bad variable
  CHECK_THROWS_AS(q_sequence(tring(), {{0, 0}}, 3), config_error);           // bad order
  CHECK_THROWS_AS(q_sequence(tring(), times(), -1), config_error);

  // Fewer declared times just freeze the missing flows at zero.
  std::vector<PolyScalar> qs = q_sequence(tring(), {{0, 1}}, 3);
  CHECK(poly_equal(qs[3], pp("t1^3/6")));
}
