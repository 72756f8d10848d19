#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "iet/interval_exchange.hpp"
#include "iet/scalar.hpp"

namespace iet {

/// dist(x, D_0) with D_0 = D u {0, b}.
Scalar rho(const IntervalExchange& f, const Scalar& x);
/// min of rho(f^k(x)) over k = -n..n-1.
Scalar rho_n(const IntervalExchange& f, const Scalar& x, long n);
/// Smallest gap between the points f^k(x), |k| <= n. Zero when two coincide.
Scalar delta_n(const IntervalExchange& f, const Scalar& x, long n);
/// min(rho_n, delta_n / 2).
Scalar rho_prime_n(const IntervalExchange& f, const Scalar& x, long n);

struct SeparationProfile {
  Scalar x;
  long n = 0;
  Scalar rho;
  Scalar rho_n;
  Scalar delta_n;
  Scalar rho_prime_n;
};

SeparationProfile separation_profile(const IntervalExchange& f, const Scalar& x, long n);

/// Grows the orbit window one step at a time, keeping rho_n, delta_n and the
/// first D'-hit current. Starts at n = 1.
class SeparationTracker {
 public:
  SeparationTracker(const IntervalExchange& f, Scalar x);

  void advance();
  long n() const { return n_; }
  const Scalar& rho() const { return rho_; }
  const Scalar& rho_n() const { return rho_n_; }
  const Scalar& delta_n() const { return delta_n_; }
  Scalar rho_prime_n() const;
  /// First visited index whose orbit point lies in D, probe order 0, 1, -1, ...
  const std::optional<DPrimeHit>& dprime_hit() const { return hit_; }
  /// Stop maintaining the gap set; only the D'-probe keeps running.
  void freeze() { frozen_ = true; }

 private:
  void insert_point(const Scalar& p);
  void note_hit(const Scalar& p, long k);

  const IntervalExchange* f_;
  long n_ = 0;
  Scalar forward_;   // f^n(x), last point of the symmetric window
  Scalar backward_;  // f^-n(x)
  Scalar rho_;
  Scalar rho_n_;
  Scalar delta_n_;
  std::set<Scalar> points_;
  bool have_delta_ = false;
  bool frozen_ = false;
  std::optional<DPrimeHit> hit_;
};

/// n = 1..64, then n -> max(n+1, round(1.05 n)), stopping at the horizon.
/// The horizon itself is not forced in, so a shorter schedule is always a
/// prefix of a longer one.
class SampleSchedule {
 public:
  static SampleSchedule hybrid(long horizon);

  const std::vector<long>& values() const { return values_; }
  long horizon() const { return horizon_; }
  /// FNV-1a over the decimal values, comma separated.
  std::uint64_t hash() const;

 private:
  std::vector<long> values_;
  long horizon_ = 0;
};

struct PsiEntry {
  long n;
  Scalar value;  // n * rho'_n (or n * rho_n for the phi variant)
  bool is_record;
};

enum class SeparationKind { kPsi, kPhi };

struct PsiRecordSeries {
  Scalar t;
  SeparationKind kind = SeparationKind::kPsi;
  long horizon = 0;
  std::uint64_t schedule_hash = 0;
  std::vector<PsiEntry> entries;
  /// Max of the values over scheduled n in [N/2, N]; zero when the series vanished.
  Scalar psi_hat;
  long best_n = 0;  // argmax for psi_hat, 0 if none
  /// False when the series hit 0 or the orbit meets D within the horizon.
  bool valid = true;
  std::optional<DPrimeHit> dprime;
  /// First n with a zero value, if any.
  std::optional<long> zero_at;

  std::size_t record_count() const;
};

PsiRecordSeries psi_records(const IntervalExchange& f, const Scalar& t, const SampleSchedule& schedule,
                            SeparationKind kind = SeparationKind::kPsi);
inline PsiRecordSeries phi_records(const IntervalExchange& f, const Scalar& t,
                                   const SampleSchedule& schedule) {
  return psi_records(f, t, schedule, SeparationKind::kPhi);
}

enum class ScanClass { kDPrimeHit, kPsiPositiveEvidence, kUndecided };
const char* scan_class_name(ScanClass c);

/// Evidence threshold; nullopt means +infinity.
using Threshold = std::optional<Scalar>;
/// b / (24 r).
Scalar default_threshold(const IntervalExchange& f);

struct ScanRow {
  Scalar t;
  ScanClass cls = ScanClass::kUndecided;
  Scalar psi_hat;
  std::size_t record_count = 0;
  long best_n = 0;
  Scalar best_value;
  std::optional<long> dprime_index;
};

struct ScanResult {
  long horizon = 0;
  std::uint64_t schedule_hash = 0;
  Threshold threshold;
  std::vector<ScanRow> rows;  // sorted by t
};

ScanResult scan_critical(const IntervalExchange& f, const std::vector<Scalar>& grid, long horizon,
                         const Threshold& threshold, unsigned jobs = 1);

}  // namespace iet
