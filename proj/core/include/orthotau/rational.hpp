#pragma once

#include <gmpxx.h>

#include <string>

#include "orthotau/error.hpp"

namespace orthotau {

// Exact rational scalar.  mpq_class gives arbitrary-precision arithmetic
// with automatic canonicalization on construction from integers; values
// built from raw string fragments must be canonicalized explicitly.
using Rational = mpq_class;

// Parses "n", "-n", or "n/d" with optional leading sign into a canonical
// rational.  Rejects empty input, a zero denominator, and any character
// outside [0-9/], aside from one optional leading '-' or '+'.
inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw config_error("empty rational literal");
  std::size_t start = 0;
  if (text[0] == '+' || text[0] == '-') start = 1;
  if (start == text.size()) throw config_error("rational literal has no digits: '" + text + "'");
  bool seen_slash = false;
  bool digits_before = false;
  bool digits_after = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '/') {
      if (seen_slash) throw config_error("rational literal has two '/': '" + text + "'");
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digits_after : digits_before) = true;
    } else {
      throw config_error("invalid character in rational literal: '" + text + "'");
    }
  }
  if (!digits_before || (seen_slash && !digits_after))
    throw config_error("malformed rational literal: '" + text + "'");
  Rational r;
  // mpq_class string constructor accepts "n/d"; strip an explicit '+'.
  if (r.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
    throw config_error("unparseable rational literal: '" + text + "'");
  if (r.get_den() == 0) throw config_error("zero denominator in rational literal: '" + text + "'");
  r.canonicalize();
  return r;
}

// Canonical text form: "n" for integers, "n/d" otherwise, '-' bound to the
// numerator.  Inverse of rational_from_string on canonical values.
inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

}  // namespace orthotau
