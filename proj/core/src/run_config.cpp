#include "ncr4/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ncr4 {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is available in libstdc++ 11.
  double out = 0.0;
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
    throw ConfigError("config: '" + std::string(key) +
                      "' expects a finite number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* last = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("config: '" + std::string(key) +
                      "' expects a non-negative integer, got '" +
                      std::string(v) + "'");
  }
  return out;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.samples = {
      {"sphere", 1'000'000}, {"discriminant", 1000}, {"jcross", 50},
      {"branch", 1000},      {"glue", 1000},         {"winding", 12},
      {"fiber", 200},
  };
  c.tolerances = {
      {"sphere", 1e-12},      {"critical", 1e-6},  {"series", 1e-12},
      {"discriminant", 1e-14}, {"jcross", 1e-6},   {"branch", 1e-12},
      {"modulus", 1e-12},     {"round_trip", 1e-8}, {"cr", 1e-6},
      {"cr_ratio", 0.5},      {"fiber", 1e-9},     {"canonical", 1e-12},
  };
  return c;
}

void RunConfig::validate() const {
  if (!ModuliParams::admissible(params.rho0, params.rho1, params.rho2)) {
    std::ostringstream os;
    os << "config: parameters (rho0, rho1, rho2) = (" << params.rho0 << ", "
       << params.rho1 << ", " << params.rho2
       << ") violate 0 < rho0 < rho1 < 1 < rho2 < 1/rho1";
    throw ConfigError(os.str());
  }
  for (const auto& [name, n] : samples) {
    if (n < 1) {
      throw ConfigError("config: samples." + name + " must be >= 1");
    }
  }
  for (const auto& [name, t] : tolerances) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw ConfigError("config: tol." + name + " must be positive");
    }
  }
}

std::size_t RunConfig::sample_count(const std::string& name) const {
  const auto it = samples.find(name);
  if (it == samples.end()) {
    throw ConfigError("config: unknown sample suite '" + name + "'");
  }
  return it->second;
}

double RunConfig::tolerance(const std::string& name) const {
  const auto it = tolerances.find(name);
  if (it == tolerances.end()) {
    throw ConfigError("config: unknown tolerance '" + name + "'");
  }
  return it->second;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "rho0") {
    params.rho0 = parse_double(key, value);
  } else if (key == "rho1") {
    params.rho1 = parse_double(key, value);
  } else if (key == "rho2") {
    params.rho2 = parse_double(key, value);
  } else if (key == "seed") {
    seed = parse_uint(key, value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key.starts_with("samples.")) {
    const std::string name(key.substr(8));
    if (!samples.contains(name)) {
      throw ConfigError("config: unknown sample suite '" + name + "'");
    }
    samples[name] = parse_uint(key, value);
  } else if (key.starts_with("tol.")) {
    const std::string name(key.substr(4));
    if (!tolerances.contains(name)) {
      throw ConfigError("config: unknown tolerance '" + name + "'");
    }
    tolerances[name] = parse_double(key, value);
  } else {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
}

void RunConfig::set_all_samples(std::size_t n) {
  for (auto& [name, count] : samples) {
    count = n;
  }
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    c.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return c;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), base);
}

}  // namespace ncr4
