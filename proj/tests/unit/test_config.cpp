#include <doctest.h>

#include <json.hpp>

#include "iet/config.hpp"
#include "iet/error.hpp"
#include "iet/report.hpp"
#include "support.hpp"

using namespace iet;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_config(text).build();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  FAIL("config accepted");
  return "";
}

}  // namespace

TEST_CASE("JSON config") {
  RunConfig c = parse_config(R"({"lengths": ["3/5", "2/5"], "perm": [2, 1], "params": {"N": 100, "t": "1/2"}})");
  CHECK(c.lengths == std::vector<std::string>{"3/5", "2/5"});
  CHECK(c.perm == std::vector<int>{2, 1});
  CHECK(c.param("N") == "100");
  CHECK(c.param("t") == "1/2");
  CHECK_FALSE(c.param("x").has_value());
  IntervalExchange f = c.build();
  CHECK(f.evaluate(Scalar::from_fraction(1, 5)) == Scalar::from_fraction(3, 5));
}

TEST_CASE("TOML config") {
  RunConfig c = parse_config(
      "# golden rotation\n"
      "lengths = [\"-1/2+1/2*sqrt(5)\",\n"
      "           \"3/2-1/2*sqrt(5)\"]  # two intervals\n"
      "perm = [2, 1]\n"
      "\n"
      "[params]\n"
      "N = 1000\n"
      "jobs = 4\n"
      "symmetric = true\n"
      "peak-threshold = 0.25\n");
  IntervalExchange f = c.build();
  CHECK(f.lengths() == golden_rotation().lengths());
  CHECK(c.param("N") == "1000");
  CHECK(c.param("symmetric") == "true");
  CHECK(c.param("peak-threshold") == "0.25");
}

TEST_CASE("config errors name the field") {
  CHECK(config_error(R"({"lengths": ["1/2", "1/2"], "perm": [1, 1]})").find("perm") != std::string::npos);
  CHECK(config_error(R"({"lengths": ["1/2", "x"], "perm": [2, 1]})").find("lengths") != std::string::npos);
  CHECK(config_error(R"({"lengths": ["1/2", "1/2"]})").find("perm") != std::string::npos);
  CHECK(config_error(R"({"lengths": ["1/2"], "perm": [2, 1]})").find("lengths") != std::string::npos);
  CHECK(config_error(R"({"lengths": ["1/2", "1/2"], "perm": [2, 1], "colour": 3})").find("colour") !=
        std::string::npos);
  CHECK(config_error("lengths = [\"1/2\", \"1/2\"]\nperm = 2 1\n").find("line") != std::string::npos);
  CHECK(config_error(R"({"lengths": )").size() > 0);
}

TEST_CASE("iet from text") {
  IntervalExchange f = iet_from_text("3/5,2/5", "2 1");
  CHECK(f.size() == 2);
  CHECK(iet_from_text("1/4, 1/4, 1/4, 1/4", "(4,3,2,1)").permutation().images() == std::vector<int>{4, 3, 2, 1});
  CHECK_THROWS_AS(iet_from_text("3/5,2/5", "2 x"), Error);
  CHECK_THROWS_AS(iet_from_text("3/5", "2 1"), Error);
}

TEST_CASE("grid parsing") {
  auto g = parse_grid("0.001:0.999:999");
  REQUIRE(g.size() == 999);
  CHECK(g.front() == Scalar::from_fraction(1, 1000));
  CHECK(g[1] == Scalar::from_fraction(2, 1000));
  CHECK(g.back() == Scalar::from_fraction(999, 1000));
  CHECK(parse_grid("1/3:1/3:1").size() == 1);
  CHECK_THROWS_AS(parse_grid("0:1"), Error);
  CHECK_THROWS_AS(parse_grid("0:1:0"), Error);
  CHECK_THROWS_AS(parse_grid("1:0:3"), Error);
  CHECK_THROWS_AS(parse_grid("0:1:x"), Error);
}

TEST_CASE("render_iet round trip") {
  for (const auto& f : {golden_rotation(), testing::quadratic_4321()}) {
    RunConfig c = parse_config(render_iet(f));
    IntervalExchange g = c.build();
    CHECK(g.lengths() == f.lengths());
    CHECK(g.permutation().images() == f.permutation().images());
  }
}

TEST_CASE("report formats") {
  CHECK(parse_format("csv") == Format::kCsv);
  CHECK_THROWS_AS(parse_format("xml"), Error);
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(report_eval(Scalar::from_fraction(3, 5), Format::kText) == "3/5\n");

  IntervalExchange f = golden_rotation();
  auto j = nlohmann::json::parse(report_eval(Scalar::from_fraction(3, 5), Format::kJson));
  CHECK(j["schema_version"] == kSchemaVersion);

  ScanResult r = scan_critical(f, parse_grid("1/4:3/4:3"), 100, default_threshold(f));
  std::string csv = report_scan(f, r, Format::kCsv);
  CHECK(csv.rfind("# schema_version=1", 0) == 0);
  CHECK(csv.find("t,classification,psi_hat,record_count,best_n,best_value_exact,dprime_depth\n") !=
        std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

  OrbitWindow w = orbit_window(iet_from_text("3/5,2/5", "2 1"), Scalar::from_fraction(1, 5), 2);
  CHECK(report_orbit(w, Format::kText) == "-2 2/5\n-1 4/5\n0 1/5\n1 3/5\n");
}
