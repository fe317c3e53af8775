#ifndef QPSURF_CLI_HPP
#define QPSURF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qpsurf {

// Exit codes shared by every verb.
inline constexpr int kExitOk = 0;             // success / verified
inline constexpr int kExitCheckFailed = 1;    // a theorem check failed
inline constexpr int kExitInvalidInput = 2;   // malformed or invalid input
inline constexpr int kExitHypotheses = 3;     // hypotheses not applicable

// Runs one command line (without the program name).  All regular output
// goes to `out`, diagnostics to `err`; the return value is the exit code.
// Verbs:
//   validate   --input t.json                  validation report
//   construct  --genus G --punctures P         canonical triangulation JSON
//   quiver     --input t.json                  adjacency quiver JSON
//   dimension  --input t.json                  dimension formula data
//   cartan     --input t.json                  Cartan matrix, rank, det
//   verify     --input t.json [--scalars L] [--truncation N]
//   report     --genus G --punctures P [--seed S]   batch family summary
// Common flags: --format json|text, --output PATH, --scalars, --truncation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpsurf

#endif
