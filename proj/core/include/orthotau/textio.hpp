#pragma once

// Deterministic text formatting shared by the command-line tool and the
// golden-file tests.  Floating-point values are always printed with 17
// significant digits so that reruns produce byte-identical output; rational
// and polynomial values already have canonical forms in their own modules.

#include <complex>
#include <string>
#include <vector>

#include "orthotau/rational.hpp"

namespace orthotau {

// Shortest fixed-precision form: printf "%.17g".
std::string format_double(double v);

// "(re, im)" with both parts in format_double form; matches the complex
// scalar ring's to_text so reports and ring dumps agree.
std::string format_complex(const std::complex<double>& v);

// Label for a rational multiple of a Schur Q-function: "-1/2 * Q_(3,0)".
// An empty partition indexes the constant 1, so the label collapses to the
// bare rational.
std::string q_label_text(const Rational& coef, const std::vector<int>& entries);

}  // namespace orthotau
