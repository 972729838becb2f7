#pragma once

// Strict partitions, N-tuples of strict partitions with weight-graded
// enumeration, Maya-diagram <-> charged-Young conversions, and the combined
// labeling rule used to tag tuples in the golden tables.
//
// Weight convention: a strict partition (l_1 > l_2 > ... >= 0) has weight
// sum_i (l_i + 1); equivalently its slot positions are the half-integers
// p_i = l_i + 1/2 and the weight is sum_i (p_i + 1/2).  A trailing zero part
// is permitted and meaningful (it contributes weight 1).

#include <string>
#include <vector>

#include "orthotau/error.hpp"
#include "orthotau/halfint.hpp"

namespace orthotau {

struct StrictPartition {
  std::vector<int> parts;  // strictly decreasing, all >= 0
};

bool strict_partition_valid(const StrictPartition& p);
int strict_partition_weight(const StrictPartition& p);
// "∅" when empty, otherwise "(3,1,0)".
std::string strict_partition_to_text(const StrictPartition& p);

// Total order used for canonical storage: weight first, then cardinality,
// then parts lexicographically.
bool strict_partition_less(const StrictPartition& a, const StrictPartition& b);

struct StrictTuple {
  std::vector<StrictPartition> components;  // one per component, size N
};

bool tuple_valid(const StrictTuple& t);
int tuple_cardinality(const StrictTuple& t);  // total number of parts
int tuple_weight(const StrictTuple& t);
// "(∅,(1,0),(2))".
std::string tuple_to_text(const StrictTuple& t);
bool tuple_less(const StrictTuple& a, const StrictTuple& b);

// One row/column slot of a minor: component index and slot position.
struct TupleSlot {
  int alpha;  // 1-based component index
  HalfInt p;  // slot position, part + 1/2
};

// Canonical slot order: alpha ascending, p descending within each alpha.
// Every minor row/column ordering downstream uses exactly this list.
std::vector<TupleSlot> tuple_slots(const StrictTuple& t);

// All strict partitions of weight exactly w, in a fixed deterministic order.
std::vector<StrictPartition> strict_partitions_of_weight(int w);

// Every N-tuple with tuple_weight <= max_weight, emitted in ascending total
// weight; deterministic order within a weight.  Throws config_error on
// invalid arguments.
std::vector<StrictTuple> enumerate_strict_tuples(int n, int max_weight);

// ---------------------------------------------------------------------------
// Maya diagrams (per component): particle positions and hole positions, both
// recorded as strictly decreasing positive half-integers.  Particles mark
// occupied positive slots; holes mark vacated negative slots by absolute
// value.  The charge is #particles - #holes.

struct MayaComponent {
  std::vector<HalfInt> particles;  // strictly decreasing, positive
  std::vector<HalfInt> holes;      // strictly decreasing, positive
};

bool maya_component_valid(const MayaComponent& m);
int maya_charge(const MayaComponent& m);

struct MayaTuple {
  std::vector<MayaComponent> components;
};

// An ordinary Young diagram together with a fermionic charge.
struct ChargedYoung {
  std::vector<int> rows;  // weakly decreasing, > 0 (trailing zeros dropped)
  int charge = 0;
};

ChargedYoung maya_component_to_charged_young(const MayaComponent& m);
MayaComponent charged_young_to_maya_component(const ChargedYoung& y);
std::vector<ChargedYoung> maya_to_charged_young(const MayaTuple& m);

// ---------------------------------------------------------------------------
// Combined labeling rule: collect (N - alpha) + part * (N - 1) over all slots
// of the tuple, sorted decreasing.  strict is false when entries repeat.
// Diagnostic only; no tau computation depends on it.

struct CombinedPartition {
  std::vector<int> entries;
  bool strict = true;
};

CombinedPartition combined_strict_partition(const StrictTuple& t, int n);

}  // namespace orthotau
