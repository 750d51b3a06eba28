#ifndef NCR4_REPORT_HPP
#define NCR4_REPORT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ncr4 {

/// One verified property: how many samples were examined, the worst
/// deviation seen and the tolerance it was held to.
struct CheckRecord {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::string note;
};

struct Report {
  std::string suite;
  std::vector<CheckRecord> checks;

  /// Conjunction of the per-check flags; false for an empty report.
  bool pass() const noexcept;
  void add(CheckRecord record) { checks.push_back(std::move(record)); }
  void append(const Report& other);
};

/// Builds a record whose pass flag is max_deviation <= tolerance (and
/// finite).
CheckRecord bounded_check(std::string name, std::size_t samples,
                          double max_deviation, double tolerance,
                          std::uint64_t seed = 0, std::string note = {});

/// JSON text with a top-level "schema": 1. Output is a pure function of
/// the report contents; `extra` is a JSON object text merged in under
/// "context" (empty for none).
std::string to_json(const Report& report, const std::string& extra = {});

}  // namespace ncr4

#endif  // NCR4_REPORT_HPP
