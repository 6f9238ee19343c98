#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exitCode;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(STRATA_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("degrees") {
  auto r = run("degrees H4");
  CHECK(r.exitCode == 0);
  CHECK(r.out == "2,12,20,30\n");
}

TEST_CASE("stratum-dim") {
  auto r = run("stratum-dim D5 1,1,1,1,0");
  CHECK(r.exitCode == 0);
  CHECK(r.out == "2\n");
}

TEST_CASE("table1 reproduces the F4 block") {
  auto r = run("table1 F4");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("d 1 -- 7   parNum 1   W B2   d_n(W) 4") != std::string::npos);
  CHECK(r.out.find("d 8 -- 11   parNum 2   W B3   d_n(W) 6") != std::string::npos);
  CHECK(r.out.find("d 12 -- 23   parNum 3   W F4   d_n(W) 12") != std::string::npos);
  CHECK(r.out.find("k 2   SecParNum 3") != std::string::npos);
}

TEST_CASE("solve exit codes and structured output") {
  auto r = run("--format json solve --group B2 --objective y1 --constraint sphere:1 --sense min");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("\"status\": \"solved\"") != std::string::npos);

  auto inf = run("--format json solve --group B2 --objective y1 --constraint "
                 "principal:1,2 --sense feasible");
  CHECK(inf.exitCode == 2);
  CHECK(inf.out.find("infeasible-numerically") != std::string::npos);

  auto usage = run("frobnicate");
  CHECK(usage.exitCode == 64);

  auto err = run("degrees Q9");
  CHECK(err.exitCode == 1);
}

TEST_CASE("identical configuration gives byte-identical structured output") {
  const std::string cmd =
      "--format json --seed 42 solve --group B3 --objective \"y2-2*y1\" "
      "--constraint sphere:1 --sense min";
  auto a = run(cmd);
  auto b = run(cmd);
  CHECK(a.exitCode == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"witness\"") != std::string::npos);
}

TEST_CASE("invariants are printed in canonical text form") {
  auto r = run("invariants B2");
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("pi_1 (deg 2) = x1^2 + x2^2") != std::string::npos);
  CHECK(r.out.find("pi_2 (deg 4) = x1^4 + x2^4") != std::string::npos);
}

TEST_CASE("jacobian-rank") {
  auto r = run("jacobian-rank D5 1,1,1,1,0 1");
  CHECK(r.out == "1\n");
  auto r2 = run("jacobian-rank B5 1,1,1,1,0 1");
  CHECK(r2.out == "1\n");
}
