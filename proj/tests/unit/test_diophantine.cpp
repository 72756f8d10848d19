#include <doctest.h>

#include "iet/diophantine.hpp"
#include "iet/error.hpp"
#include "support.hpp"

using namespace iet;
using namespace iet::testing;

namespace {

Scalar q(long n, long d) { return Scalar::from_fraction(n, d); }

}  // namespace

TEST_CASE("rho examples") {
  IntervalExchange f = rotation(2, 5);
  CHECK(rho(f, q(1, 5)) == q(1, 5));
  CHECK(rho(f, q(1, 2)) == q(1, 10));
  CHECK(rho(f, q(3, 5)) == Scalar(0));
  CHECK(rho(f, Scalar(0)) == Scalar(0));
  CHECK(rho(f, q(9, 10)) == q(1, 10));
}

TEST_CASE("rho_n and delta_n examples") {
  IntervalExchange f = rotation(2, 5);
  // window k = -1, 0 of 1/5: {4/5, 1/5}
  CHECK(rho_n(f, q(1, 5), 1) == q(1, 5));
  // the orbit of 1/5 under the 2/5 rotation meets 3/5 at k = 1
  CHECK(rho_n(f, q(1, 5), 2) == Scalar(0));
  // symmetric window -1..1 of 1/5: {4/5, 1/5, 3/5}
  CHECK(delta_n(f, q(1, 5), 1) == q(1, 5));
  // period 5 means a coincidence once 2n >= 5
  CHECK(delta_n(f, q(1, 10), 3) == Scalar(0));
  CHECK(delta_n(f, q(1, 10), 2) == q(1, 5));
  CHECK(rho_prime_n(f, q(1, 10), 2) == q(1, 10));

  SeparationProfile p = separation_profile(golden_rotation(), q(1, 2), 5);
  CHECK(p.rho_n == brute_rho_n(golden_rotation(), q(1, 2), 5));
  CHECK(p.delta_n == brute_delta_n(golden_rotation(), q(1, 2), 5));
  CHECK(p.rho_prime_n == min(p.rho_n, p.delta_n / Scalar(2)));
}

TEST_CASE("delta_n matches the pairwise oracle") {
  Rng rng(31);
  for (int i = 0; i < 25; ++i) {
    IntervalExchange f = i % 5 == 0 ? quadratic_4321() : random_rational_iet(rng, 2 + i % 3, 0);
    Scalar x = random_point(rng, Scalar(0), f.total_length());
    const long n = uniform(rng, 1, 60);
    CHECK(delta_n(f, x, n) == brute_delta_n(f, x, n));
    CHECK(rho_n(f, x, n) == brute_rho_n(f, x, n));
  }
}

TEST_CASE("tracker agrees with direct evaluation at every n") {
  Rng rng(32);
  for (int i = 0; i < 6; ++i) {
    IntervalExchange f = i % 2 == 0 ? golden_rotation() : random_rational_iet(rng, 3, 0);
    Scalar x = random_point(rng, Scalar(0), f.total_length());
    SeparationTracker tr(f, x);
    for (long n = 1; n <= 80; ++n) {
      if (n > 1) tr.advance();
      CHECK(tr.n() == n);
      CHECK(tr.rho_n() == rho_n(f, x, n));
      CHECK(tr.delta_n() == delta_n(f, x, n));
      CHECK(tr.rho_prime_n() == rho_prime_n(f, x, n));
    }
  }
}

TEST_CASE("separation is monotone in n") {
  Rng rng(33);
  for (int i = 0; i < 10; ++i) {
    IntervalExchange f = i % 2 == 0 ? quadratic_4321() : random_rational_iet(rng, 4, 0);
    Scalar x = random_point(rng, Scalar(0), f.total_length());
    SeparationTracker tr(f, x);
    Scalar prev_rho = tr.rho_n();
    Scalar prev_delta = tr.delta_n();
    for (long n = 2; n <= 300; ++n) {
      tr.advance();
      CHECK(tr.rho_n() <= prev_rho);
      CHECK(tr.delta_n() <= prev_delta);
      prev_rho = tr.rho_n();
      prev_delta = tr.delta_n();
    }
  }
}

TEST_CASE("shifting the window by one step") {
  // the window of f(t) at n - 1 sits inside the window of t at n
  Rng rng(34);
  for (int i = 0; i < 20; ++i) {
    IntervalExchange f = i % 2 == 0 ? golden_rotation() : random_rational_iet(rng, 3, 0);
    Scalar t = random_point(rng, Scalar(0), f.total_length());
    const long n = uniform(rng, 2, 150);
    CHECK(rho_prime_n(f, f.evaluate(t), n - 1) >= rho_prime_n(f, t, n));
  }
}

TEST_CASE("schedule") {
  SampleSchedule s = SampleSchedule::hybrid(10'000);
  const auto& v = s.values();
  CHECK(v.front() == 1);
  CHECK(v[63] == 64);
  CHECK(v[64] == 67);
  CHECK(v.back() <= 10'000);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  SampleSchedule shorter = SampleSchedule::hybrid(1000);
  REQUIRE(shorter.values().size() < v.size());
  CHECK(std::equal(shorter.values().begin(), shorter.values().end(), v.begin()));
  CHECK(SampleSchedule::hybrid(1000).hash() == shorter.hash());
  CHECK(shorter.hash() != s.hash());
  CHECK(SampleSchedule::hybrid(3).values() == std::vector<long>{1, 2, 3});
  CHECK_THROWS_AS(SampleSchedule::hybrid(0), Error);
}

TEST_CASE("psi series vanishes exactly on the orbit of 0") {
  IntervalExchange f = golden_rotation();
  Scalar t = f.evaluate(Scalar(0));
  PsiRecordSeries s = psi_records(f, t, SampleSchedule::hybrid(100));
  REQUIRE(s.zero_at.has_value());
  CHECK(*s.zero_at == 1);
  CHECK_FALSE(s.valid);
  CHECK(s.psi_hat == Scalar(0));
  CHECK(s.entries.back().value == Scalar(0));
  CHECK(s.entries.back().n == 1);
}

TEST_CASE("psi series at t = 1/2") {
  IntervalExchange f = golden_rotation();
  PsiRecordSeries s = psi_records(f, q(1, 2), SampleSchedule::hybrid(10'000));
  CHECK(s.valid);
  CHECK_FALSE(s.dprime.has_value());
  CHECK(s.best_n * 2 >= 10'000);
  CHECK(s.psi_hat >= default_threshold(f));
  // the largest tail value equals n * rho'_n by direct evaluation
  CHECK(s.psi_hat == Scalar(s.best_n) * rho_prime_n(f, q(1, 2), s.best_n));
  // a floating three-distance computation agrees
  const long double a = (3.0L - std::sqrt(5.0L)) / 2.0L;
  CircleSeparation c = rotation_separation(a, 0.5L, s.best_n);
  CHECK(c.distinct_gaps <= 3);
  CHECK(std::fabs(static_cast<long double>(s.psi_hat.to_double()) - c.n_rho_prime) < 1e-6L);
  std::size_t records = 0;
  Scalar best;
  for (const auto& e : s.entries) {
    if (e.is_record) {
      CHECK(best < e.value);
      best = e.value;
      ++records;
    } else {
      CHECK(e.value <= best);
    }
  }
  CHECK(records == s.record_count());
}

TEST_CASE("psi over a shorter horizon is a prefix") {
  IntervalExchange f = quadratic_4321();
  PsiRecordSeries a = psi_records(f, q(1, 3), SampleSchedule::hybrid(1000));
  PsiRecordSeries b = psi_records(f, q(1, 3), SampleSchedule::hybrid(10'000));
  REQUIRE(a.entries.size() < b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].n == b.entries[i].n);
    CHECK(a.entries[i].value == b.entries[i].value);
    CHECK(a.entries[i].is_record == b.entries[i].is_record);
  }
}

TEST_CASE("phi series uses rho_n only") {
  IntervalExchange f = golden_rotation();
  PsiRecordSeries s = phi_records(f, q(1, 2), SampleSchedule::hybrid(200));
  CHECK(s.kind == SeparationKind::kPhi);
  for (const auto& e : s.entries) CHECK(e.value == Scalar(e.n) * rho_n(f, q(1, 2), e.n));
}

TEST_CASE("scan classification") {
  IntervalExchange f = golden_rotation();
  std::vector<Scalar> grid{q(1, 2), f.evaluate(Scalar(0)), f.evaluate_inverse(Scalar(0)), q(1, 4)};
  ScanResult r = scan_critical(f, grid, 2000, default_threshold(f), 2);
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i - 1].t < r.rows[i].t);
  int hits = 0;
  for (const auto& row : r.rows) {
    if (row.t == grid[1] || row.t == grid[2]) {
      CHECK(row.cls == ScanClass::kDPrimeHit);
      CHECK(row.dprime_index.has_value());
      ++hits;
    } else {
      CHECK(row.cls == ScanClass::kPsiPositiveEvidence);
      CHECK(row.best_value == row.psi_hat);
    }
  }
  CHECK(hits == 2);

  ScanResult inf = scan_critical(f, grid, 2000, std::nullopt, 1);
  for (const auto& row : inf.rows) CHECK(row.cls != ScanClass::kPsiPositiveEvidence);

  CHECK_THROWS_AS(scan_critical(f, {Scalar(0)}, 10, std::nullopt), Error);
  CHECK(default_threshold(f) == q(1, 48));
  CHECK(std::string(scan_class_name(ScanClass::kUndecided)) == "Undecided");
}

TEST_CASE("scan result does not depend on the number of jobs") {
  IntervalExchange f = quadratic_4321();
  std::vector<Scalar> grid;
  for (long k = 1; k < 40; ++k) grid.push_back(q(k, 40));
  ScanResult a = scan_critical(f, grid, 500, default_threshold(f), 1);
  ScanResult b = scan_critical(f, grid, 500, default_threshold(f), 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].t == b.rows[i].t);
    CHECK(a.rows[i].cls == b.rows[i].cls);
    CHECK(a.rows[i].psi_hat == b.rows[i].psi_hat);
  }
}
