#pragma once

#include <stdexcept>
#include <string>

namespace orthotau {

// Invalid input data or configuration: bad algebra rank, mismatched variable
// sets, an initial condition that violates the required quadratic relation,
// a malformed config document, or a request outside a series' reliable
// window.  The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric computation failed to converge or could not honor its accuracy
// contract: a matrix exponential that never terminates under the requested
// truncation, a hypergeometric series that fails its tolerance within the
// term budget, or quadrature under-resolution promoted to an error.  The CLI
// maps this to exit code 3.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant was violated.  This always indicates a bug in the
// library, never bad user input.  The CLI maps this to exit code 1.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace orthotau
