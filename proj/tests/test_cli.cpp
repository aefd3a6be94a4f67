// Runs the built command-line tool and checks exit codes and outputs.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

#ifndef GNCH_CLI_PATH
#error "GNCH_CLI_PATH must name the gnch executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GNCH_CLI_PATH) + " " + args + " 2>/dev/null";
  Run res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gnch_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval sweeps flag the turning point") {
    const auto r = run("eval --preset mixed --lambda 1 --a0 0 --times 0:1:5");
    CHECK(r.code == 2);
    CHECK(r.out.rfind("t,x1,m1,valid\n", 0) == 0);
    CHECK(r.out.find("\n0.25,nan,nan,0\n") != std::string::npos);
    CHECK(r.out.find("\n0.5,") != std::string::npos);
  }

  TEST_CASE("two-peakon turning times are flagged in both modes") {
    const auto fl = run("eval --preset mixed --lambda 1,-1 --a0 0,0 --times -0.25,0,0.25");
    CHECK(fl.code == 2);
    const auto ex = run("eval --preset mixed --mode exact --lambda 1,-1 --times -1/4,0,1/4");
    CHECK(ex.code == 2);
    for (const auto* out : {&fl.out, &ex.out}) {
      std::size_t invalid = 0;
      for (std::size_t at = out->find(",0\n"); at != std::string::npos; at = out->find(",0\n", at + 1)) ++invalid;
      CHECK(invalid == 3);
    }
  }

  TEST_CASE("single valid row") {
    const auto r = run("eval --preset ch --lambda 2 --a0 0 --times 0:0:1");
    CHECK(r.code == 0);
    CHECK(r.out == "t,x1,m1,valid\n0,0.34657359027997275,-1,1\n");
  }

  TEST_CASE("exact eval prints rationals") {
    const auto r = run("eval --preset mixed --mode exact --lambda 1,-1 --times 1/2:1/2:1");
    CHECK(r.code == 0);
    CHECK(r.out.find("41/21") != std::string::npos);
    CHECK(r.out.find("5/7") != std::string::npos);
  }

  TEST_CASE("figure aliases and errors") {
    const auto fig = run("figure --fig 1");
    CHECK(fig.code == 0);
    CHECK(fig.out.rfind("t,x,u\n", 0) == 0);
    const auto alias = run("eval --fig 1");
    CHECK(alias.code == 0);
    CHECK(alias.out == fig.out);
    CHECK(run("figure --fig 3").code == 1);
  }

  TEST_CASE("usage errors exit 1") {
    CHECK(run("").code == 1);
    CHECK(run("eval --preset nope --lambda 1 --times 0:1:2").code == 1);
    CHECK(run("eval --preset mixed --lambda 1 --times 0:1:0").code == 1);
    CHECK(run("eval --preset mixed --mode exact --lambda 1 --a0 1 --times 0:1:2").code == 1);
    CHECK(run("identities --mode float").code == 1);
  }

  TEST_CASE("identities exit codes") {
    CHECK(run("identities --trials 1 --max-n 1").code == 0);
    const auto bad = run("identities --trials 3 --max-n 3 --inject-fault");
    CHECK(bad.code == 3);
    CHECK(bad.out.find("first_failure") != std::string::npos);
  }

  TEST_CASE("ode and spectrum") {
    CHECK(run("ode --preset mixed --lambda 1 --a0 0 --times 0.5:0.9:2 --steps 4096").code == 0);
    CHECK(run("ode --preset mixed --lambda 1 --a0 0 --times 0:0.5:2 --steps 512").code == 2);
    const auto mixed = run("spectrum --preset mixed --lambda 1 --a0 0 --times 0.4,0.5,0.6");
    CHECK(mixed.code == 0);
    CHECK(mixed.out.find("\"expected_slope\":-4.0") != std::string::npos);
    CHECK(run("spectrum --preset ch --lambda 1,3 --a0 0,0 --times 0:1:5").code == 0);
  }

  TEST_CASE("outputs are byte identical across runs") {
    const auto a = scratch("a.json");
    const auto b = scratch("b.json");
    const std::string args = "identities --trials 20 --max-n 4 --seed 11 --out ";
    REQUIRE(run(args + a.string()).code == 0);
    REQUIRE(run(args + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    const auto p = scratch("p.csv");
    const auto q = scratch("q.csv");
    REQUIRE(run("eval --preset mixed --lambda 1,-1 --a0 0,0 --times -1:1:9 --grid -3:3:61 --profile-out " +
                p.string() + " --out " + scratch("rows1.csv").string()).code == 2);
    REQUIRE(run("eval --preset mixed --lambda 1,-1 --a0 0,0 --times -1:1:9 --grid -3:3:61 --profile-out " +
                q.string() + " --out " + scratch("rows2.csv").string()).code == 2);
    CHECK(slurp(p) == slurp(q));
    CHECK(slurp(scratch("rows1.csv")) == slurp(scratch("rows2.csv")));
    CHECK(slurp(p).rfind("t,x,u\n", 0) == 0);
  }
}
