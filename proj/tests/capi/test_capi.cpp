// Exercises the shared library through iet.h only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "iet/iet.h"

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  iet_string_free(s);
  return out;
}

iet_map* make(const char* lengths, const char* perm) {
  iet_map* f = nullptr;
  REQUIRE(iet_map_create(lengths, perm, &f) == IET_OK);
  return f;
}

}  // namespace

TEST_CASE("map lifecycle and evaluation") {
  iet_map* f = make("3/5,2/5", "2 1");
  CHECK(iet_map_size(f) == 2);
  char* y = nullptr;
  REQUIRE(iet_map_eval(f, "1/5", &y) == IET_OK);
  CHECK(take(y) == "3/5");
  REQUIRE(iet_map_eval_inverse(f, "3/5", &y) == IET_OK);
  CHECK(take(y) == "1/5");
  char* r = nullptr;
  REQUIRE(iet_map_render(f, &r) == IET_OK);
  CHECK(take(r).find("3/5") != std::string::npos);
  int ok = -1;
  REQUIRE(iet_map_idoc(f, 10, &ok) == IET_OK);
  CHECK(ok == 0);
  iet_map_destroy(f);
  iet_map_destroy(nullptr);
}

TEST_CASE("status codes and last error") {
  iet_map* f = nullptr;
  CHECK(iet_map_create("1/2,1/2", "1 1", &f) == IET_ERR_CONFIG);
  CHECK(f == nullptr);
  CHECK(std::string(iet_last_error()).find("perm") != std::string::npos);
  CHECK(iet_map_create("1/2,x", "2 1", &f) == IET_ERR_CONFIG);
  CHECK(iet_map_create(nullptr, "2 1", &f) == IET_ERR_ARGUMENT);

  f = make("3/5,2/5", "2 1");
  char* y = nullptr;
  CHECK(iet_map_eval(f, "1", &y) == IET_ERR_DOMAIN);
  CHECK(y == nullptr);
  CHECK(iet_map_eval(f, "1/", &y) == IET_ERR_PARSE);
  iet_map* g = nullptr;
  REQUIRE(iet_map_golden(&g) == IET_OK);
  CHECK(iet_map_eval(g, "1/3*sqrt(2)", &y) == IET_ERR_FIELD_MISMATCH);
  iet_map_destroy(g);
  CHECK(std::strcmp(iet_status_name(IET_ERR_STEP_CAP), "step cap exceeded") == 0);
  CHECK(std::strcmp(iet_status_name(IET_OK), "ok") == 0);

  iet_stack* s = nullptr;
  CHECK(iet_stack_build_tall(f, 10, 1000, &s) == IET_ERR_STEP_CAP);
  iet_map_destroy(f);
}

TEST_CASE("induced map") {
  iet_map* g = nullptr;
  REQUIRE(iet_map_golden(&g) == IET_OK);
  iet_induced* h = nullptr;
  REQUIRE(iet_induce(g, "1/2", 1000000, &h) == IET_OK);
  CHECK(iet_induced_piece_count(h) == 3);
  char* lo = nullptr;
  char* hi = nullptr;
  char* w = nullptr;
  long m = 0;
  REQUIRE(iet_induced_piece(h, 0, &lo, &hi, &m, &w) == IET_OK);
  CHECK(take(lo) == "0");
  take(hi);
  take(w);
  CHECK(m >= 1);
  CHECK(iet_induced_piece(h, 3, &lo, &hi, &m, &w) == IET_ERR_ARGUMENT);
  char* y = nullptr;
  REQUIRE(iet_induced_eval(h, "1/4", &y) == IET_OK);
  take(y);
  iet_induced_destroy(h);
  iet_induced* capped = nullptr;
  CHECK(iet_induce(g, "1/1000000", 5, &capped) == IET_ERR_STEP_CAP);
  CHECK(capped == nullptr);
  iet_map_destroy(g);
}

TEST_CASE("stacks") {
  iet_map* g = nullptr;
  REQUIRE(iet_map_golden(&g) == IET_OK);
  iet_stack* s = nullptr;
  REQUIRE(iet_stack_build_tall(g, 100, 1000000, &s) == IET_OK);
  CHECK(iet_stack_height(s) >= 100);
  CHECK(iet_stack_distinct(s) == 1);
  int ok = 0;
  size_t level = 0;
  int defect = 0;
  REQUIRE(iet_stack_verify(g, s, &ok, &level, &defect) == IET_OK);
  CHECK(ok == 1);
  char* measure = nullptr;
  REQUIRE(iet_stack_measure(s, &measure) == IET_OK);
  CHECK(take(measure).find("sqrt(5)") != std::string::npos);

  iet_stack* t = nullptr;
  REQUIRE(iet_stack_trim(s, &t) == IET_OK);
  REQUIRE(iet_stack_verify(g, t, &ok, &level, &defect) == IET_OK);
  CHECK(ok == 1);

  char* rn = nullptr;
  char* dn = nullptr;
  char* rp = nullptr;
  REQUIRE(iet_separation(g, "1/2", 20, &rn, &dn, &rp) == IET_OK);
  take(rn);
  take(dn);
  const std::string rho_prime = take(rp);

  iet_stack* w = nullptr;
  REQUIRE(iet_stack_from_window(g, "1/2", 20, rho_prime.c_str(), &w) == IET_OK);
  REQUIRE(iet_stack_verify(g, w, &ok, &level, &defect) == IET_OK);
  CHECK(ok == 1);
  iet_stack_destroy(w);
  // a radius far beyond rho_n crosses a discontinuity
  REQUIRE(iet_stack_from_window(g, "1/2", 20, "1/4", &w) == IET_OK);
  REQUIRE(iet_stack_verify(g, w, &ok, &level, &defect) == IET_OK);
  CHECK(ok == 0);
  CHECK(defect == 1);
  CHECK(level >= 1);
  iet_stack_destroy(w);
  iet_stack_destroy(t);
  iet_stack_destroy(s);
  iet_map_destroy(g);
}

TEST_CASE("boundary averages through the C interface") {
  iet_map* g = nullptr;
  REQUIRE(iet_map_golden(&g) == IET_OK);
  char* rn = nullptr;
  char* dn = nullptr;
  char* rp = nullptr;
  REQUIRE(iet_separation(g, "1/2", 50, &rn, &dn, &rp) == IET_OK);
  take(rn);
  take(dn);
  const std::string eps = take(rp);
  double out[12] = {};
  REQUIRE(iet_boundary_averages(g, "1/2", 0.0, 50, eps.c_str(), 8, 1000, out) == IET_OK);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::fabs(out[2 * i] - 1.0) < 1e-12);
    CHECK(std::fabs(out[2 * i + 1]) < 1e-12);
  }
  CHECK(iet_boundary_averages(g, "1/2", 0.1, 50, "1/2", 8, 1000, out) == IET_ERR_PRECONDITION);
  iet_map_destroy(g);
}

TEST_CASE("commands") {
  iet_map* g = nullptr;
  REQUIRE(iet_map_golden(&g) == IET_OK);
  char* out = nullptr;
  REQUIRE(iet_cmd_scan(g, "1/4:3/4:5", 200, nullptr, 2, "csv", &out) == IET_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("# schema_version=1", 0) == 0);
  REQUIRE(iet_cmd_scan(g, "1/4:3/4:5", 200, "inf", 1, "json", &out) == IET_OK);
  CHECK(take(out).find("\"classification\": \"PsiPositiveEvidence\"") == std::string::npos);
  CHECK(iet_cmd_scan(g, "0:1:5", 200, nullptr, 1, "csv", &out) == IET_ERR_DOMAIN);
  CHECK(iet_cmd_psi(g, "1/2", 100, 0, "xml", &out) == IET_ERR_CONFIG);
  REQUIRE(iet_cmd_idoc(g, 100, "json", &out) == IET_OK);
  take(out);
  iet_map* r = make("3/5,2/5", "2 1");
  CHECK(iet_cmd_stack(r, 10, 1000, 100, 0, "json", &out) == IET_ERR_PRECONDITION);
  iet_map_destroy(r);
  iet_map_destroy(g);
}
