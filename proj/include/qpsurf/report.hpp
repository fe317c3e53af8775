#ifndef QPSURF_REPORT_HPP
#define QPSURF_REPORT_HPP

#include "qpsurf/invariants.hpp"
#include "qpsurf/path_algebra.hpp"
#include "qpsurf/triangulation.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace qpsurf {

// Reports are built as ordered JSON so identical inputs yield byte-identical
// output in both formats.
using Json = nlohmann::ordered_json;

// Result of the full verification pipeline on one triangulation.  `verdict`
// is "verified" only when the hypotheses apply and every theorem check
// passed; "failed" when a check failed; "hypotheses-not-met" otherwise (in
// which case only the informational dimension table is populated).
struct VerifyOutcome {
  Json report;
  int exit_code = 0;  // 0 verified, 1 check failure, 2 invalid input, 3 hypotheses not met
};

// Runs hypothesis gating, dimension, basis, Cartan, symmetry, center and
// non-rigidity checks on a valid triangulation.  `scalars_text` is the
// comma-separated scalar list ("" = default primes); `truncation` <= 0
// selects the default bound.
VerifyOutcome verify_triangulation(const Triangulation& t,
                                   const std::string& scalars_text,
                                   int truncation);

// Family verification: every triangulable (genus, punctures) pair in the
// rectangle genus <= genus_max, punctures <= punctures_max, built by
// nice_triangulation when seed == 0 or by seeded random add_puncture chains
// otherwise, then verified.  Case failures are recorded in the summary, not
// thrown.
Json batch_verify(int genus_max, int punctures_max, unsigned seed);

// Aligned plain-text rendering of a report object.
std::string render_text(const Json& report);

}  // namespace qpsurf

#endif
