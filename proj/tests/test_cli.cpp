#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "dfc/coeffs.hpp"
#include "dfc/margin.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(DFC_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "dfc_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli design emits the closed-form weights") {
  const auto result = run_cli("design --period 2 --depth 2 --epsilon 0");
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.output);
  CHECK(j.at("T") == 2);
  CHECK(j.at("N") == 2);
  CHECK(j.at("a").at(0).get<double>() == 0.75);
  CHECK(j.at("a").at(1).get<double>() == 0.25);
}

TEST_CASE("cli margin on the depth-1 controller") {
  const auto result = run_cli("margin --period 1 --coeffs 1");
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.output);
  CHECK(j.at("mu_tilde").get<double>() == -1.0);
  CHECK(j.at("method") == "closed_t1");
}

TEST_CASE("cli design-to-margin round trip is bitwise stable") {
  const auto dir = scratch_dir();
  const auto file = (dir / "design_n5.json").string();
  REQUIRE(run_cli("design --period 1 --depth 5 --epsilon 1e-3 --out " + file)
              .exit_code == 0);

  const auto result = run_cli("margin --coeffs-file " + file);
  REQUIRE(result.exit_code == 0);
  const json j = json::parse(result.output);

  const double direct = dfc::margin_t1(dfc::fejer_coeffs_t1(5, 1e-3)).mu_tilde;
  CHECK(j.at("mu_tilde").get<double>() == direct);  // bitwise equality
}

TEST_CASE("cli margin methods agree") {
  const auto closed = run_cli("margin --period 2 --coeffs 0.75,0.25");
  const auto curve =
      run_cli("margin --period 2 --coeffs 0.75,0.25 --method curve");
  const auto bisect =
      run_cli("margin --period 2 --coeffs 0.75,0.25 --method bisect");
  REQUIRE(closed.exit_code == 0);
  REQUIRE(curve.exit_code == 0);
  REQUIRE(bisect.exit_code == 0);
  const double closed_mu = json::parse(closed.output).at("mu_tilde");
  const double curve_mu = json::parse(curve.output).at("mu_tilde");
  const double bisect_mu = json::parse(bisect.output).at("mu_tilde");
  CHECK(std::abs(closed_mu - curve_mu) <= 1e-8);
  CHECK(std::abs(closed_mu - bisect_mu) <= 1e-6);
}

TEST_CASE("cli schur exit codes track stability") {
  CHECK(run_cli("schur --period 1 --coeffs 1 --mu 0.5").exit_code == 0);
  CHECK(run_cli("schur --period 1 --coeffs 1 --mu -3").exit_code == 1);

  const auto with_roots =
      run_cli("schur --period 1 --coeffs 0.669967,0.330033 --mu -1.9 --roots");
  REQUIRE(with_roots.exit_code == 0);
  const json j = json::parse(with_roots.output);
  CHECK(j.at("method") == "roots");
  CHECK(j.at("max_modulus").get<double>() < 1.0);
  CHECK(j.at("roots").size() == 2);
}

TEST_CASE("cli sweep bound column matches the closed forms") {
  const auto t1 = run_cli("sweep --period 1 --depths 2..6 --epsilon 1e-3");
  REQUIRE(t1.exit_code == 0);
  std::istringstream lines(t1.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "N,mu_tilde,bound,gap");
  int rows = 0;
  while (std::getline(lines, line)) {
    int depth = 0;
    double mu = 0.0, bound = 0.0, gap = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &depth, &mu, &bound,
                        &gap) == 4);
    const double tan_half = std::tan(std::numbers::pi / (2.0 * (depth + 1)));
    const double expected = -1.0 / (tan_half * tan_half);
    CHECK(std::abs(bound - expected) <= 1e-12 * std::abs(expected));
    CHECK(gap == doctest::Approx(mu - bound));
    CHECK(mu >= expected);
    ++rows;
  }
  CHECK(rows == 5);

  const auto t2 = run_cli("sweep --period 2 --depths 2..6 --epsilon 1e-3");
  REQUIRE(t2.exit_code == 0);
  std::istringstream lines2(t2.output);
  std::getline(lines2, line);
  while (std::getline(lines2, line)) {
    int depth = 0;
    double mu = 0.0, bound = 0.0, gap = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &depth, &mu, &bound,
                        &gap) == 4);
    CHECK(bound == -static_cast<double>(depth) * depth);
  }
}

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run_cli("margin --period 1").exit_code == 2);  // no coefficients
  CHECK(run_cli("margin --coeffs 1").exit_code == 2);  // no period
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("design --period 3 --depth 2").exit_code == 2);
  CHECK(run_cli("margin --period 1 --coeffs 0.2,0.2").exit_code == 2);
}

TEST_CASE("cli config file supplies defaults and flags win") {
  const auto dir = scratch_dir();
  const auto config = dir / "margin_config.json";
  {
    std::ofstream out(config);
    out << R"({"period": 1, "coeffs": "0.5,0.5"})";
  }
  const auto from_config = run_cli("margin --config " + config.string());
  REQUIRE(from_config.exit_code == 0);
  CHECK(json::parse(from_config.output).at("coeffs").at("a").size() == 2);

  // An explicit flag overrides the config value.
  const auto overridden =
      run_cli("margin --config " + config.string() + " --coeffs 1");
  REQUIRE(overridden.exit_code == 0);
  CHECK(json::parse(overridden.output).at("coeffs").at("a").size() == 1);
  CHECK(json::parse(overridden.output).at("mu_tilde").get<double>() == -1.0);

  const auto bad = dir / "bad_config.json";
  {
    std::ofstream out(bad);
    out << R"({"period": 1, "coeffs": "1", "bogus_key": 3})";
  }
  CHECK(run_cli("margin --config " + bad.string()).exit_code == 2);

  // Out-of-range numerics parse to infinity and must be rejected.
  const auto inf = dir / "inf_config.json";
  {
    std::ofstream out(inf);
    out << R"({"period": 1, "coeffs": "1", "epsilon": 1e999})";
  }
  CHECK(run_cli("design --depth 2 --config " + inf.string()).exit_code == 2);
}

TEST_CASE("cli verify suites pass at small depth") {
  const auto result = run_cli("verify --suite thm5 --max-depth 3 --seed 0");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[PASS]") != std::string::npos);
  CHECK(result.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("cli stabilize converges for the controlled run only") {
  const auto dir = scratch_dir();
  const auto trace = (dir / "trace.csv").string();
  const auto controlled = run_cli(
      "stabilize --map logistic --param 3.9 --period 1 --depth 2 "
      "--epsilon 1e-2 --perturb 1e-3 --steps 4000 --out " +
      trace);
  REQUIRE(controlled.exit_code == 0);
  const json j = json::parse(controlled.output);
  CHECK(j.at("converged").get<bool>());
  CHECK(j.at("predicted_stable").get<bool>());

  std::ifstream csv(trace);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k,x,u,dist");

  // Depth 1 leaves the plant uncontrolled, so the same perturbation never
  // settles back onto the unstable fixed point.
  const auto uncontrolled = run_cli(
      "stabilize --map logistic --param 3.9 --period 1 --depth 1 "
      "--epsilon 0 --perturb 1e-3 --steps 4000 --out " +
      trace);
  CHECK(uncontrolled.exit_code == 1);
  CHECK_FALSE(json::parse(uncontrolled.output).at("converged").get<bool>());
}
