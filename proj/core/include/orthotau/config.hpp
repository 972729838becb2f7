#pragma once

// Run configuration for the batch tool: one JSON document per run.
//
// Schema (all keys optional unless a subcommand needs them):
//   {
//     "algebra": {"series": "B"|"D", "rank": int},
//     "parameters": ["a", ...],            // symbols usable in coefficients
//     "times": [1, 3, 5],                  // active odd flow orders
//     "negate_times": false,               // flip the sign of every flow
//     "initial_condition": [
//       {"row": 2, "col": 1, "z_power": -1, "coeff": "a"}, ...
//     ],                                   // 1-based entries of X(z)
//     "max_weight": 4,
//     "output": "text"|"json",
//     "iso": {"theta0": x, "theta_t": x, "theta1": x, "theta_inf": x,
//             "sigma": x, "eta": x, "t": x,          // x: number or [re, im]
//             "radius": 0.5, "quad_nodes": 256, "mode_cutoff": 16}
//   }
//
// Coefficient expressions are restricted to rational literals and the
// declared parameter symbols; time variables may not appear in them.  The
// dressing subcommands additionally require X(z)^t = -S X(z) S, checked
// entry by entry before any computation starts.

#include <string>
#include <vector>

#include "orthotau/algebra.hpp"
#include "orthotau/iso.hpp"

namespace orthotau {

struct IcEntry {
  int row = 0;      // 1-based
  int col = 0;      // 1-based
  int z_power = -1; // must be negative (the outside factor is I at infinity)
  std::string coeff;
};

struct RunConfig {
  bool has_algebra = false;
  Series series = Series::B;
  int rank = 1;

  std::vector<std::string> parameters;
  std::vector<int> times = {1, 3, 5};
  bool negate_times = false;
  std::vector<IcEntry> initial_condition;
  long max_weight = 4;
  std::string output = "text";

  bool has_iso = false;
  IsoParams iso;
};

// Parses and validates one JSON document.  Unknown keys, malformed values,
// or out-of-range fields raise config_error.
RunConfig parse_run_config(const std::string& text);

// Reads the file and parses it; missing or unreadable files raise
// config_error.
RunConfig load_run_config(const std::string& path);

}  // namespace orthotau
