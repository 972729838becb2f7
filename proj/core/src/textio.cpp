#include "orthotau/textio.hpp"

#include <cstdio>

namespace orthotau {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(const std::complex<double>& v) {
  return "(" + format_double(v.real()) + ", " + format_double(v.imag()) + ")";
}

std::string q_label_text(const Rational& coef, const std::vector<int>& entries) {
  if (entries.empty()) return rational_to_string(coef);
  std::string label = rational_to_string(coef) + " * Q_(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) label += ",";
    label += std::to_string(entries[i]);
  }
  label += ")";
  return label;
}

}  // namespace orthotau
