// Integration tests that drive the installed CLI binary through its public
// surface: subcommands, flags, formats and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(DIRDIST_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) output += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (const char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<double> split_doubles(const std::string& line) {
  std::vector<double> vals;
  std::string cur;
  for (const char c : line + ",") {
    if (c == ',') {
      if (!cur.empty()) vals.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return vals;
}

}  // namespace

TEST_CASE("sampling is reproducible byte for byte") {
  const std::string args = "sample --dist wc --params lambda=0.5 --n 3 --seed 1";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  const auto ls = lines_of(a.output);
  REQUIRE(ls.size() == 4);  // header + 3 rows
  CHECK(ls[0] == "theta");

  // A different seed changes the stream.
  const RunResult c = run_cli("sample --dist wc --params lambda=0.5 --n 3 --seed 2");
  CHECK(c.output != a.output);

  // All three construction methods are reachable.
  for (const char* m : {"doubling", "stereographic", "wrapping"}) {
    const RunResult r =
        run_cli(std::string("sample --dist wc --params lambda=0.5 method=") + m + " --n 2");
    CHECK(r.exit_code == 0);
  }
  CHECK(run_cli("sample --dist wc --params lambda=0.5 method=bogus --n 1").exit_code == 2);
  // Wrapping needs a nonzero concentration.
  CHECK(run_cli("sample --dist wc --params lambda=0 method=wrapping --n 1").exit_code == 2);
}

TEST_CASE("sampling dimension and json format") {
  const RunResult r = run_cli("sample --dist sc --params lambda=0.3 q=3 --n 5 --seed 7");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.output);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "x1,x2,x3");
  const auto row = split_doubles(ls[1]);
  REQUIRE(row.size() == 3);
  CHECK(std::abs(row[0] * row[0] + row[1] * row[1] + row[2] * row[2] - 1.0) < 1e-12);

  const RunResult j =
      run_cli("sample --dist uniform --params q=2 --n 4 --seed 3 --format json");
  CHECK(j.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(j.output);
  CHECK(parsed["n"] == 4);
  CHECK(parsed["samples"].size() == 4);
}

TEST_CASE("invalid parameters exit with code 2") {
  // Non-SPD concentration matrix.
  CHECK(run_cli("sample --dist acg --params q=2 omega=1,2,2,1 --n 1").exit_code == 2);
  // Missing required parameter.
  CHECK(run_cli("sample --dist wc --n 1").exit_code == 2);
  // Unknown distribution.
  CHECK(run_cli("sample --dist nope --n 1").exit_code == 2);
  // Unknown suite name is a usage error.
  CHECK(run_cli("check --suite nope").exit_code == 2);
  // trials = 0 violates the precondition.
  CHECK(run_cli("check --suite mobius --trials 0").exit_code == 2);
  // Point outside the gnomonic hemisphere.
  CHECK(run_cli("project --op gnomonic --point -1,0").exit_code == 2);
}

TEST_CASE("density grids carry quadrature weights that integrate to 1") {
  SUBCASE("uniform circle values") {
    const RunResult r = run_cli("density --dist wc --params lambda=0 --grid 8");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.output);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == "theta1,weight,density");
    for (size_t i = 1; i < ls.size(); ++i) {
      const auto vals = split_doubles(ls[i]);
      REQUIRE(vals.size() == 3);
      CHECK(std::abs(vals[2] - 1.0 / (2.0 * 3.14159265358979324)) < 1e-12);
    }
  }

  SUBCASE("circle ACG mass") {
    const RunResult r = run_cli("density --dist acg --params b=0.5 --grid 1024");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.output);
    double mass = 0.0;
    for (size_t i = 1; i < ls.size(); ++i) {
      const auto vals = split_doubles(ls[i]);
      mass += vals[1] * vals[2];
    }
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }

  SUBCASE("explicit concentration matrix on the circle") {
    const RunResult r =
        run_cli("density --dist acg --params q=2 omega=0.25,0,0,1 --grid 512");
    CHECK(r.exit_code == 0);
    const auto ls = lines_of(r.output);
    double mass = 0.0;
    for (size_t i = 1; i < ls.size(); ++i) {
      const auto vals = split_doubles(ls[i]);
      mass += vals[1] * vals[2];
    }
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }

  SUBCASE("sphere SC mass") {
    const RunResult r = run_cli(
        "density --dist sc --params lambda=0.5 q=3 mu0=0,0,1 --grid 64x128 --format json");
    CHECK(r.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(r.output);
    CHECK(std::abs(parsed["weighted_mass"].get<double>() - 1.0) < 1e-6);
  }
}

TEST_CASE("parameter conversion table") {
  const RunResult r = run_cli("convert --from lambda --value 0.5");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.output);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "lambda,b,mu,alpha,A,B,C");
  const auto vals = split_doubles(ls[1]);
  REQUIRE(vals.size() == 7);
  CHECK(std::abs(vals[0] - 0.5) < 1e-15);
  CHECK(std::abs(vals[1] - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(vals[3] - 0.4) < 1e-15);
  CHECK(std::abs(vals[4] - 0.6) < 1e-15);
  CHECK(std::abs(vals[6] - 0.8) < 1e-15);

  const RunResult j = run_cli("convert --from alpha --value 0.4 --format json");
  const nlohmann::json parsed = nlohmann::json::parse(j.output);
  CHECK(std::abs(parsed["lambda"].get<double>() - 0.5) < 1e-14);
}

TEST_CASE("projection round trip through the CLI") {
  const RunResult fwd = run_cli("project --op gnomonic --point 0.8,0.6");
  CHECK(fwd.exit_code == 0);
  const auto v = split_doubles(lines_of(fwd.output)[1]);
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0] - 0.75) < 1e-15);

  const RunResult back = run_cli("project --op gnomonic-inverse --point 0.75");
  const auto x = split_doubles(lines_of(back.output)[1]);
  REQUIRE(x.size() == 2);
  CHECK(std::abs(x[0] - 0.8) < 1e-15);
  CHECK(std::abs(x[1] - 0.6) < 1e-15);

  const RunResult st = run_cli("project --op stereographic-inverse --point 1");
  const auto y = split_doubles(lines_of(st.output)[1]);
  CHECK(std::abs(y[0]) < 1e-15);
  CHECK(std::abs(y[1] - 1.0) < 1e-15);
}

TEST_CASE("spectral grid matches the wrapped Cauchy peak") {
  const RunResult r = run_cli("spectral --lambda 0.5 --grid 16 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(r.output);
  CHECK(std::abs(parsed["alpha"].get<double>() - 0.4) < 1e-15);
  CHECK(parsed["rows"].size() == 16);
}

TEST_CASE("check subcommand reports and exit codes") {
  const RunResult r = run_cli("check --suite mobius --trials 2000 --seed 42 --format json");
  CHECK(r.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(r.output);
  CHECK(parsed["passed"] == true);
  CHECK(parsed["suite"] == "mobius");
  CHECK(parsed["seed"] == 42);
  CHECK(parsed["max_abs_error"].get<double>() <= 1e-12);

  // Same flags, same report (wall time excluded).
  const RunResult again =
      run_cli("check --suite mobius --trials 2000 --seed 42 --format json");
  const nlohmann::json reparsed = nlohmann::json::parse(again.output);
  CHECK(reparsed["max_abs_error"] == parsed["max_abs_error"]);
  CHECK(reparsed["trials"] == parsed["trials"]);

  // An unreachable tolerance makes the run fail with exit code 1.
  const RunResult fail = run_cli("check --suite mobius --trials 100 --tol 1e-30");
  CHECK(fail.exit_code == 1);

  // CSV output carries the header.
  const RunResult csv = run_cli("check --suite table1");
  CHECK(lines_of(csv.output)[0] == "suite,trials,max_abs_error,tolerance,passed,seed,wall_time");
}

TEST_CASE("emitted spherical Cauchy samples carry the right first moment") {
  // Quadrature truth for E[y . mu0] at lambda = 0.5, q = 3, mu0 = e1 and the
  // matching draw variance, both frozen from a 64x128 product rule.
  const double truth_mean = 0.632030587624179;
  const double truth_var = 0.180613805367908;
  const int n = 20000;
  const RunResult r = run_cli("sample --dist sc --params lambda=0.5 q=3 --n " +
                              std::to_string(n) + " --seed 31415");
  CHECK(r.exit_code == 0);
  const auto ls = lines_of(r.output);
  REQUIRE(ls.size() == static_cast<size_t>(n) + 1);
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) acc += split_doubles(ls[i])[0];
  const double mean = acc / n;
  const double sigma = std::sqrt(truth_var / n);
  CHECK(std::abs(mean - truth_mean) < 3.0 * sigma);
}

TEST_CASE("output can be redirected to a file") {
  const std::string path = "/tmp/dirdist_cli_test_out.csv";
  std::remove(path.c_str());
  const RunResult r =
      run_cli("sample --dist wc --params lambda=0.2 --n 2 --seed 9 --out " + std::string(path));
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::fclose(f);
  std::remove(path.c_str());

  // An unwritable destination is a parameter error.
  const RunResult bad = run_cli(
      "sample --dist wc --params lambda=0.2 --n 1 --out /no-such-dir/out.csv");
  CHECK(bad.exit_code == 2);
}
