// Runs the iet executable and checks output and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "iet/config.hpp"
#include "iet/diophantine.hpp"
#include "iet/report.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(IET_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("eval and orbit") {
  Run e = run("eval --lengths 3/5,2/5 --perm \"2 1\" --x 1/5");
  CHECK(e.code == 0);
  CHECK(e.out == "3/5\n");
  Run inv = run("eval --lengths 3/5,2/5 --perm \"2 1\" --x 3/5 --inverse true");
  CHECK(inv.out == "1/5\n");
  Run o = run("orbit --lengths 3/5,2/5 --perm \"2 1\" --x 1/5 --n 2");
  CHECK(o.code == 0);
  CHECK(o.out == "-2 2/5\n-1 4/5\n0 1/5\n1 3/5\n");
}

TEST_CASE("configuration errors exit with 2") {
  Run bad = run("eval --lengths 1/2,1/2 --perm \"1 1\" --x 1/5");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("perm") != std::string::npos);
  CHECK(run("eval --x 1/5 --frobnicate 3").code == 2);
  CHECK(run("eval").code == 2);
  CHECK(run("eval --x 2").code == 2);
  CHECK(run("scan --grid 0:1:5 --N 10").code == 2);
  CHECK(run("psi --t 1/2 --N 10 --format xml").code == 2);
  CHECK(run("eval --x 1/5 --config /nonexistent/iet.toml").code == 2);
}

TEST_CASE("step cap exits with 3, failed preconditions with 4") {
  CHECK(run("induce --t 1/1000000 --step-cap 5").code == 3);
  Run r = run("stack --lengths 3/5,2/5 --perm \"2 1\" --N 10");
  CHECK(r.code == 4);
  CHECK(r.out.find("d_1") != std::string::npos);
}

TEST_CASE("config file supplies the map and parameters") {
  const auto path = std::filesystem::temp_directory_path() / "iet_cli_test.toml";
  {
    std::ofstream f(path);
    f << "lengths = [\"3/5\", \"2/5\"]\nperm = [2, 1]\n[params]\nx = \"1/5\"\nn = 2\n";
  }
  Run o = run("orbit --config " + path.string());
  CHECK(o.code == 0);
  CHECK(o.out == "-2 2/5\n-1 4/5\n0 1/5\n1 3/5\n");
  // command-line values win over the config
  Run e = run("eval --config " + path.string() + " --x 4/5");
  CHECK(e.out == "1/5\n");
  std::filesystem::remove(path);
}

TEST_CASE("scan row count and stack check") {
  Run s = run("scan --grid 0.001:0.999:999 --N 100");
  CHECK(s.code == 0);
  // comment line, header, rows
  CHECK(lines(s.out) == 999 + 2);
  Run st = run("stack --N 100 --format json");
  CHECK(st.code == 0);
  CHECK(st.out.find("\"verify_stack\": \"Ok\"") != std::string::npos);
  Run trimmed = run("stack --N 100 --trim true --format jsonl");
  CHECK(trimmed.code == 0);
  CHECK(lines(trimmed.out) > 10);
}

TEST_CASE("psi output equals the library rendering") {
  Run p = run("psi --t 1/2 --N 2000 --format json");
  REQUIRE(p.code == 0);
  const iet::IntervalExchange f = iet::golden_rotation();
  const auto series = iet::psi_records(f, iet::Scalar::from_fraction(1, 2), iet::SampleSchedule::hybrid(2000));
  CHECK(p.out == iet::report_psi(series, iet::Format::kJson));
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "iet_cli_out.txt";
  CHECK(run("eval --x 1/5 --lengths 3/5,2/5 --perm \"2 1\" --output " + path.string()).code == 0);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "3/5\n");
  std::filesystem::remove(path);
}
