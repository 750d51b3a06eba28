#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "ncr4/report.hpp"
#include "ncr4/run_config.hpp"
#include "ncr4/verify.hpp"

using ncr4::ConfigError;
using ncr4::RunConfig;

TEST_CASE("default config") {
  const auto c = RunConfig::defaults();
  CHECK_NOTHROW(c.validate());
  CHECK(c.params.rho0 == 0.1);
  CHECK(c.params.rho1 == 0.3);
  CHECK(c.params.rho2 == 2.0);
  CHECK(c.sample_count("sphere") == 1000000);
  CHECK(c.tolerance("jcross") == 1e-6);
  CHECK_THROWS_AS(c.sample_count("nope"), ConfigError);
  CHECK_THROWS_AS(c.tolerance("nope"), ConfigError);
}

TEST_CASE("config text") {
  const auto c = ncr4::parse_config(
      "# comment\n"
      "rho0 = 0.05\n"
      "  rho1=0.25   # trailing\n"
      "rho2 = 3.5\n"
      "\n"
      "seed = 42\n"
      "samples.glue = 17\n"
      "tol.cr = 2e-6\n"
      "out = reports\n");
  CHECK(c.params.rho0 == 0.05);
  CHECK(c.params.rho1 == 0.25);
  CHECK(c.params.rho2 == 3.5);
  CHECK(c.seed == 42);
  CHECK(c.sample_count("glue") == 17);
  CHECK(c.tolerance("cr") == 2e-6);
  CHECK(c.out == "reports");
  CHECK_NOTHROW(c.validate());

  CHECK_THROWS_AS(ncr4::parse_config("rho3 = 1\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::parse_config("rho1 0.2\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::parse_config("rho1 = abc\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::parse_config("seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::parse_config("samples.bogus = 3\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::parse_config("tol.bogus = 3\n"), ConfigError);
  CHECK_THROWS_AS(ncr4::load_config_file("/nonexistent/ncr4.cfg"), ConfigError);
}

TEST_CASE("config validation") {
  auto c = RunConfig::defaults();
  c.params.rho1 = 0.6;  // 1/0.6 < 2
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig::defaults();
  c.set("tol.cr", "0");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig::defaults();
  c.set("samples.fiber", "0");
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig::defaults();
  c.set_all_samples(3);
  CHECK(c.sample_count("sphere") == 3);
  CHECK(c.sample_count("winding") == 3);
}

TEST_CASE("report pass flag") {
  ncr4::Report r;
  CHECK_FALSE(r.pass());
  r.add(ncr4::bounded_check("a", 1, 0.5, 1.0));
  CHECK(r.pass());
  r.add(ncr4::bounded_check("b", 1, std::numeric_limits<double>::quiet_NaN(), 1.0));
  CHECK_FALSE(r.checks.back().pass);
  CHECK_FALSE(r.pass());
  CHECK(ncr4::bounded_check("edge", 1, 1.0, 1.0).pass);
  CHECK_FALSE(ncr4::bounded_check("inf", 1, INFINITY, INFINITY).pass);
}

TEST_CASE("report json") {
  ncr4::Report r;
  r.suite = "demo";
  r.add(ncr4::bounded_check("a", 10, 1e-13, 1e-12, 7, "note"));
  r.add(ncr4::bounded_check("b", 2, INFINITY, 1.0));
  const auto text = ncr4::to_json(r, R"({"seed": 1})");
  const auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "demo");
  CHECK(j["context"]["seed"] == 1);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"] == "a");
  CHECK(j["checks"][0]["samples"] == 10);
  CHECK(j["checks"][0]["seed"] == 7);
  CHECK(j["checks"][0]["pass"] == true);
  CHECK(j["checks"][1]["max_deviation"].is_null());
  CHECK(j["pass"] == false);
  CHECK(text == ncr4::to_json(r, R"({"seed": 1})"));
  CHECK(text.substr(0, 1) == "{");
  CHECK(text.back() == '\n');
}

TEST_CASE("suites are deterministic and seed dependent") {
  auto c = RunConfig::defaults();
  c.set_all_samples(50);
  const auto a = ncr4::to_json(ncr4::verify::branch_suite(c));
  const auto b = ncr4::to_json(ncr4::verify::branch_suite(c));
  CHECK(a == b);
  c.seed = 2;
  const auto d = ncr4::to_json(ncr4::verify::branch_suite(c));
  CHECK(a != d);
}

TEST_CASE("context json") {
  const auto j = nlohmann::json::parse(ncr4::verify::context_json(RunConfig::defaults()));
  CHECK(j["rho1"] == 0.3);
  CHECK(j["samples"]["sphere"] == 1000000);
  CHECK(j["tolerances"]["jcross"] == 1e-6);
}
