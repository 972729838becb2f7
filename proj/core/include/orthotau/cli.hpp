#pragma once

// Reusable command-line front end.  The binary's main() delegates here so
// tests can drive every subcommand in-process and compare captured output
// byte for byte.
//
// Subcommands:
//   ds-tau        dressing-flow tau polynomial from a config file
//   tables        minor table (tuple, Pf(d S), Pf(S a), Q label)
//   qschur        one Schur Q-function, e.g. --partition "(4,2)"
//   square-check  determinant expansion against the squared Pfaffian
//   iso           numeric four-point square-relation report
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numeric
// non-convergence, 1 internal invariant failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace orthotau {

// args is the command line without the program name, in natural order.
// Normal output goes to out, diagnostics to err.  Never throws; all errors
// are mapped to the exit codes above.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthotau
