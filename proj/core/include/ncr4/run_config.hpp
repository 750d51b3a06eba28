#ifndef NCR4_RUN_CONFIG_HPP
#define NCR4_RUN_CONFIG_HPP

// Configuration for verification runs. The file format is flat key-value
// text, one `key = value` per line, '#' starts a comment:
//
//   rho0 = 0.1
//   rho1 = 0.3
//   rho2 = 2.0
//   seed = 1
//   samples.sphere = 1000000
//   tol.jcross = 1e-6
//   out = reports

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ncr4/numerics.hpp"

namespace ncr4 {

/// Invalid configuration text or values (maps to exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  ModuliParams params{};
  std::uint64_t seed = 1;
  std::map<std::string, std::size_t> samples;
  std::map<std::string, double> tolerances;
  std::string out;

  /// Defaults for every suite known to `run_verify`.
  static RunConfig defaults();

  /// Throws ConfigError unless params lie in the admissible region, all
  /// sample counts are >= 1 and all tolerances are finite and > 0.
  void validate() const;

  std::size_t sample_count(const std::string& name) const;
  double tolerance(const std::string& name) const;

  /// Applies one `key = value` assignment; unknown keys, unknown suite
  /// names and malformed numbers throw ConfigError.
  void set(std::string_view key, std::string_view value);

  /// Applies `--samples N` to every suite.
  void set_all_samples(std::size_t n);
};

/// Parses config text on top of `base` (defaults when omitted).
RunConfig parse_config(std::string_view text,
                       const RunConfig& base = RunConfig::defaults());

RunConfig load_config_file(const std::string& path,
                           const RunConfig& base = RunConfig::defaults());

}  // namespace ncr4

#endif  // NCR4_RUN_CONFIG_HPP
