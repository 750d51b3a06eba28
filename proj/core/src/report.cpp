#include "ncr4/report.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace ncr4 {

bool Report::pass() const noexcept {
  if (checks.empty()) {
    return false;
  }
  for (const auto& c : checks) {
    if (!c.pass) {
      return false;
    }
  }
  return true;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

CheckRecord bounded_check(std::string name, std::size_t samples,
                          double max_deviation, double tolerance,
                          std::uint64_t seed, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.samples = samples;
  r.max_deviation = max_deviation;
  r.tolerance = tolerance;
  r.pass = std::isfinite(max_deviation) && max_deviation <= tolerance;
  r.seed = seed;
  r.note = std::move(note);
  return r;
}

std::string to_json(const Report& report, const std::string& extra) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  j["suite"] = report.suite;
  if (!extra.empty()) {
    j["context"] = ordered_json::parse(extra);
  }
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json row;
    row["name"] = c.name;
    row["samples"] = c.samples;
    // JSON has no inf/nan; non-finite deviations are written as null.
    if (std::isfinite(c.max_deviation)) {
      row["max_deviation"] = c.max_deviation;
    } else {
      row["max_deviation"] = nullptr;
    }
    row["tolerance"] = c.tolerance;
    row["pass"] = c.pass;
    row["seed"] = c.seed;
    if (!c.note.empty()) {
      row["note"] = c.note;
    }
    checks.push_back(std::move(row));
  }
  j["checks"] = std::move(checks);
  j["pass"] = report.pass();
  return j.dump(2) + "\n";
}

}  // namespace ncr4
