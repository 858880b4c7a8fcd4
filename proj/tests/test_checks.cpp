#include <doctest.h>

#include <stdexcept>

#include "dirdist/checks.hpp"

using namespace dirdist;

TEST_CASE("every named suite passes at its default tolerance") {
  // Trimmed trial counts keep this a smoke pass; the acceptance binary runs
  // the full sizes.
  for (const char* name : {"mobius", "mobius-general", "doubling", "pushforward-gnomonic",
                           "pushforward-stereo", "fourier", "table1", "spectral"}) {
    const auto reports = run_identity_suite(name, 500, 42, std::nullopt);
    REQUIRE(reports.size() == 1);
    INFO(std::string(name) << " max error " << reports[0].max_abs_error);
    CHECK(reports[0].passed);
    CHECK(reports[0].suite == name);
    CHECK(reports[0].trials > 0);
  }
  const auto normalization = run_identity_suite("normalization", std::nullopt, 42, std::nullopt);
  CHECK(normalization[0].passed);
  const auto samplers = run_identity_suite("samplers", 20000, 42, std::nullopt);
  CHECK(samplers[0].passed);
  CHECK(samplers[0].tolerance == 3.0);
}

TEST_CASE("all runs every suite") {
  const auto reports = run_identity_suite("all", 300, 7, std::nullopt);
  CHECK(reports.size() == 10);
}

TEST_CASE("reports are reproducible for a fixed seed") {
  const auto a = run_identity_suite("mobius", 2000, 99, 1e-12);
  const auto b = run_identity_suite("mobius", 2000, 99, 1e-12);
  CHECK(a[0].max_abs_error == b[0].max_abs_error);
  CHECK(a[0].trials == b[0].trials);
  CHECK(a[0].passed == b[0].passed);
  CHECK(a[0].seed == b[0].seed);

  // The Monte Carlo suite is just as deterministic given the seed.
  const auto mc1 = run_identity_suite("samplers", 2000, 5, std::nullopt);
  const auto mc2 = run_identity_suite("samplers", 2000, 5, std::nullopt);
  CHECK(mc1[0].max_abs_error == mc2[0].max_abs_error);
}

TEST_CASE("suite argument validation") {
  CHECK_THROWS_AS(run_identity_suite("mobius", 0, 1, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(run_identity_suite("no-such-suite", std::nullopt, 1, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_identity_suite("mobius", 100, 1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(run_identity_suite("mobius", 100, 1, 0.0), std::invalid_argument);
}

TEST_CASE("an unreachable tolerance fails and is reported") {
  const auto reports = run_identity_suite("mobius", 200, 3, 1e-30);
  CHECK_FALSE(reports[0].passed);
  CHECK(reports[0].max_abs_error > 1e-30);
}

TEST_CASE("dedicated acceptance helpers") {
  const CheckReport mf = run_measure_factor_suite(1e-12);
  CHECK(mf.passed);
  const CheckReport qf = run_quadratic_form_suite(2000, 11, 1e-10);
  CHECK(qf.passed);
}

TEST_CASE("report serialization") {
  CheckReport r;
  r.suite = "mobius";
  r.trials = 10;
  r.max_abs_error = 1e-15;
  r.tolerance = 1e-12;
  r.passed = true;
  r.seed = 4;
  r.wall_time = 0.25;
  const std::string j = to_json_string(r);
  CHECK(j.find("\"suite\":\"mobius\"") != std::string::npos);
  CHECK(j.find("\"passed\":true") != std::string::npos);
  const std::string line = to_csv_line(r);
  CHECK(line.find("mobius,10,") == 0);
  CHECK(check_report_csv_header().find("suite,") == 0);
}
