#pragma once

#include <string>
#include <vector>

#include "orthotau/error.hpp"

namespace orthotau {

// A strictly half-odd-integer index value p ∈ {..., -3/2, -1/2, 1/2, 3/2, ...},
// stored as its doubled value (always odd).  These index the mode expansions
// of the integral kernels: positive half-integers label the modes retained by
// the projection, and each half-integer p pairs with a nonnegative integer
// "part" via p = part + 1/2.
struct HalfInt {
  int twice = 1;  // doubled value; invariant: odd

  friend bool operator==(const HalfInt& a, const HalfInt& b) { return a.twice == b.twice; }
  friend bool operator!=(const HalfInt& a, const HalfInt& b) { return a.twice != b.twice; }
  friend bool operator<(const HalfInt& a, const HalfInt& b) { return a.twice < b.twice; }
  friend bool operator>(const HalfInt& a, const HalfInt& b) { return a.twice > b.twice; }
  friend bool operator<=(const HalfInt& a, const HalfInt& b) { return a.twice <= b.twice; }
  friend bool operator>=(const HalfInt& a, const HalfInt& b) { return a.twice >= b.twice; }
};

// Builds a HalfInt from its doubled value, enforcing oddness.
inline HalfInt half_from_twice(int twice) {
  if (twice % 2 == 0) throw internal_error("HalfInt requires an odd doubled value");
  return HalfInt{twice};
}

// part ↦ part + 1/2 for integer part (part may be negative).
inline HalfInt part_plus_half(int part) { return HalfInt{2 * part + 1}; }

// Inverse of part_plus_half: p ↦ p - 1/2 as an integer.  Requires p = k + 1/2.
inline int part_of(const HalfInt& p) {
  if ((p.twice - 1) % 2 != 0) throw internal_error("part_of: non-half-odd value");
  return (p.twice - 1) / 2;
}

// The weight contributed by a positive mode index p = k + 1/2: weight = k + 1
// = p + 1/2.  Requires p > 0.
inline int weight_of(const HalfInt& p) {
  if (p.twice <= 0) throw internal_error("weight_of requires a positive half-integer");
  return (p.twice + 1) / 2;
}

// Sum p + q when the result is an integer (it always is for two HalfInt).
inline int sum_int(const HalfInt& p, const HalfInt& q) {
  int t = p.twice + q.twice;
  if (t % 2 != 0) throw internal_error("sum_int: non-integer sum");
  return t / 2;
}

// "1/2", "-3/2", ...
inline std::string half_to_string(const HalfInt& p) {
  return std::to_string(p.twice) + "/2";
}

}  // namespace orthotau
