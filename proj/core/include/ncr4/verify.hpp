#ifndef NCR4_VERIFY_HPP
#define NCR4_VERIFY_HPP

// Verification suites run by `ncr4 verify`. Each suite returns a Report
// whose checks carry sample counts, worst deviations, tolerances and seeds;
// every random draw comes from a per-suite stream derived from the config
// seed, so reports are reproducible.

#include <string>

#include "ncr4/report.hpp"
#include "ncr4/run_config.hpp"

namespace ncr4::verify {

Report sphere_suite(const RunConfig& config);
Report critical_suite(const RunConfig& config);
Report fiber_suite(const RunConfig& config);
Report series_suite(const RunConfig& config);
Report nodal_suite(const RunConfig& config);
Report jcross_suite(const RunConfig& config);
Report branch_suite(const RunConfig& config);
Report glue_suite(const RunConfig& config);
Report winding_suite(const RunConfig& config);
Report distinguish_suite(const RunConfig& config);
Report symbolic_suite(const RunConfig& config);

/// All suites in a fixed order, merged into one report named "verify".
Report run_all(const RunConfig& config);

/// JSON object text describing the run (parameters, seed, counts).
std::string context_json(const RunConfig& config);

}  // namespace ncr4::verify

#endif  // NCR4_VERIFY_HPP
