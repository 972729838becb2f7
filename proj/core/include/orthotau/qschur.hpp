#pragma once

// Schur Q-functions in the time variables, for cross-checking the Pfaffian
// minor tables: every Pf(S a) minor is a rational multiple of the Q-function
// of the combined partition of its tuple.
//
// The one-row generating series is exp(sum_k t_k z^k) = sum_r q_r(t) z^r over
// the declared times; two-row functions follow from
//   Q_(a,b) = q_a q_b + 2 sum_{i=1..b} (-1)^i q_{a+i} q_{b-i},   a > b >= 0,
// extended antisymmetrically, and a general strict partition's Q_lambda is
// the Pfaffian of the matrix of its two-row values after padding to even
// length (append a 0 part, or drop one already present).

#include <cstddef>
#include <utility>
#include <vector>

#include "orthotau/partitions.hpp"
#include "orthotau/poly.hpp"
#include "orthotau/ring.hpp"

namespace orthotau {

// A flow declaration: ring variable index and its (positive, distinct) order.
using TimeList = std::vector<std::pair<std::size_t, int>>;

// q_0 .. q_max_order from the generating series, via the derivative
// recurrence r q_r = sum_k k t_k q_{r-k}.
std::vector<PolyScalar> q_sequence(const PolyRing& ring, const TimeList& times, int max_order);

// Two-row Q-function.  Antisymmetric in (a, b); equal indices are rejected.
PolyScalar q_pair(const PolyRing& ring, const TimeList& times, int a, int b);

// Q-function of a strict partition (parts >= 0, strictly decreasing).
PolyScalar q_lambda(const PolyRing& ring, const TimeList& times, const StrictPartition& lambda);

}  // namespace orthotau
