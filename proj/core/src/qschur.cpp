#include "orthotau/qschur.hpp"

#include <algorithm>
#include <set>

#include "orthotau/error.hpp"
#include "orthotau/linalg.hpp"
#include "orthotau/matrix.hpp"

namespace orthotau {

namespace {

void check_times(const PolyRing& ring, const TimeList& times) {
  std::set<int> orders;
  for (const auto& [var, order] : times) {
    if (var >= ring.vars->size()) throw config_error("q_sequence: time variable out of range");
    if (order < 1) throw config_error("q_sequence: time order must be positive");
    if (!orders.insert(order).second) throw config_error("q_sequence: duplicate time order");
  }
}

PolyScalar q_pair_from(const PolyRing& ring, const std::vector<PolyScalar>& qs, int a, int b) {
  // a > b >= 0; qs must cover orders up to a + b.
  PolyScalar acc = poly_mul(qs[static_cast<std::size_t>(a)], qs[static_cast<std::size_t>(b)]);
  for (int i = 1; i <= b; ++i) {
    PolyScalar prod = poly_mul(qs[static_cast<std::size_t>(a + i)], qs[static_cast<std::size_t>(b - i)]);
    prod = poly_scale(prod, Rational(2));
    acc = (i % 2 == 1) ? poly_sub(acc, prod) : poly_add(acc, prod);
  }
  return acc;
}

}  // namespace

std::vector<PolyScalar> q_sequence(const PolyRing& ring, const TimeList& times, int max_order) {
  if (max_order < 0) throw config_error("q_sequence: negative order");
  check_times(ring, times);
  std::vector<PolyScalar> qs;
  qs.reserve(static_cast<std::size_t>(max_order) + 1);
  qs.push_back(poly_one(ring.vars));
  for (int r = 1; r <= max_order; ++r) {
    PolyScalar acc = poly_zero(ring.vars);
    for (const auto& [var, order] : times) {
      if (order > r) continue;
      PolyScalar term = poly_mul(poly_var(ring.vars, var), qs[static_cast<std::size_t>(r - order)]);
      acc = poly_add(acc, poly_scale(term, Rational(order)));
    }
    qs.push_back(poly_scale(acc, Rational(1, r)));
  }
  return qs;
}

PolyScalar q_pair(const PolyRing& ring, const TimeList& times, int a, int b) {
  if (a < 0 || b < 0) throw config_error("q_pair: negative index");
  if (a == b) throw config_error("q_pair: equal indices are not a strict pair");
  const bool flip = a < b;
  if (flip) std::swap(a, b);
  std::vector<PolyScalar> qs = q_sequence(ring, times, a + b);
  PolyScalar val = q_pair_from(ring, qs, a, b);
  return flip ? poly_neg(val) : val;
}

PolyScalar q_lambda(const PolyRing& ring, const TimeList& times, const StrictPartition& lambda) {
  if (!strict_partition_valid(lambda)) throw config_error("q_lambda: not a strict partition");
  std::vector<int> parts = lambda.parts;
  if (parts.size() % 2 != 0) {
    // Pad to even length: a trailing 0 part is absorbed, otherwise appended.
    if (!parts.empty() && parts.back() == 0)
      parts.pop_back();
    else
      parts.push_back(0);
  }
  const int k = static_cast<int>(parts.size());
  if (k == 0) return poly_one(ring.vars);

  int max_order = 0;
  if (k >= 2) max_order = parts[0] + parts[1];
  std::vector<PolyScalar> qs = q_sequence(ring, times, max_order);
  Mat<PolyScalar> m(k, poly_zero(ring.vars));
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      PolyScalar v = q_pair_from(ring, qs, parts[static_cast<std::size_t>(i)],
                                 parts[static_cast<std::size_t>(j)]);
      m.at(i, j) = v;
      m.at(j, i) = poly_neg(v);
    }
  return pfaffian(ring, m);
}

}  // namespace orthotau
