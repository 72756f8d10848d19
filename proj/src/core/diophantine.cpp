#include "iet/diophantine.hpp"

#include <algorithm>
#include <string>

#include "iet/error.hpp"
#include "parallel.hpp"

namespace iet {

Scalar rho(const IntervalExchange& f, const Scalar& x) {
  if (!f.in_domain(x)) throw Error(ErrorCode::kDomain, "point " + x.render() + " outside domain");
  const auto& bp = f.breakpoints();
  const std::size_t k = f.segment_of(x);
  Scalar left = x - bp[k];
  Scalar right = bp[k + 1] - x;
  return left < right ? left : right;
}

Scalar rho_n(const IntervalExchange& f, const Scalar& x, long n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "n must be at least 1");
  OrbitWindow w = orbit_window(f, x, n);
  Scalar best = rho(f, w.points.front());
  for (std::size_t i = 1; i < w.points.size(); ++i) {
    Scalar r = rho(f, w.points[i]);
    if (r < best) best = std::move(r);
  }
  return best;
}

Scalar delta_n(const IntervalExchange& f, const Scalar& x, long n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "n must be at least 1");
  OrbitWindow w = orbit_window(f, x, n, /*symmetric=*/true);
  std::vector<Scalar> pts = std::move(w.points);
  std::sort(pts.begin(), pts.end());
  Scalar best = pts[1] - pts[0];
  for (std::size_t i = 2; i < pts.size(); ++i) {
    Scalar gap = pts[i] - pts[i - 1];
    if (gap < best) best = std::move(gap);
  }
  return best;
}

Scalar rho_prime_n(const IntervalExchange& f, const Scalar& x, long n) {
  Scalar r = rho_n(f, x, n);
  Scalar half = delta_n(f, x, n) / Scalar(2);
  return half < r ? half : r;
}

SeparationProfile separation_profile(const IntervalExchange& f, const Scalar& x, long n) {
  SeparationProfile p;
  p.x = x;
  p.n = n;
  p.rho = rho(f, x);
  p.rho_n = rho_n(f, x, n);
  p.delta_n = delta_n(f, x, n);
  Scalar half = p.delta_n / Scalar(2);
  p.rho_prime_n = half < p.rho_n ? half : p.rho_n;
  return p;
}

SeparationTracker::SeparationTracker(const IntervalExchange& f, Scalar x)
    : f_(&f), n_(1), forward_(f.evaluate(x)), backward_(f.evaluate_inverse(x)) {
  rho_ = iet::rho(f, x);
  Scalar rb = iet::rho(f, backward_);
  rho_n_ = rb < rho_ ? rb : rho_;
  note_hit(x, 0);
  note_hit(forward_, 1);
  note_hit(backward_, -1);
  points_.insert(x);
  insert_point(forward_);
  insert_point(backward_);
}

void SeparationTracker::note_hit(const Scalar& p, long k) {
  if (hit_) return;
  if (auto j = f_->discontinuity_index(p)) hit_ = DPrimeHit{k, *j};
}

void SeparationTracker::insert_point(const Scalar& p) {
  auto [it, inserted] = points_.insert(p);
  if (!inserted) {
    delta_n_ = Scalar(0);
    have_delta_ = true;
    return;
  }
  auto consider = [&](Scalar gap) {
    if (!have_delta_ || gap < delta_n_) {
      delta_n_ = std::move(gap);
      have_delta_ = true;
    }
  };
  if (it != points_.begin()) consider(*it - *std::prev(it));
  if (auto next = std::next(it); next != points_.end()) consider(*next - *it);
}

void SeparationTracker::advance() {
  // rho window -n..n-1 gains f^n and f^-(n+1); the symmetric window gains
  // f^(n+1) and f^-(n+1)
  Scalar previous_forward = forward_;
  forward_ = f_->evaluate(forward_);
  backward_ = f_->evaluate_inverse(backward_);
  ++n_;
  note_hit(forward_, n_);
  note_hit(backward_, -n_);
  if (frozen_) return;
  Scalar a = iet::rho(*f_, previous_forward);
  if (a < rho_n_) rho_n_ = std::move(a);
  Scalar c = iet::rho(*f_, backward_);
  if (c < rho_n_) rho_n_ = std::move(c);
  if (!delta_n_.is_zero()) {
    insert_point(forward_);
    insert_point(backward_);
  }
}

Scalar SeparationTracker::rho_prime_n() const {
  Scalar half = delta_n_ / Scalar(2);
  return half < rho_n_ ? half : rho_n_;
}

SampleSchedule SampleSchedule::hybrid(long horizon) {
  if (horizon < 1) throw Error(ErrorCode::kDomain, "horizon must be at least 1");
  SampleSchedule s;
  s.horizon_ = horizon;
  long n = 1;
  while (n <= horizon) {
    s.values_.push_back(n);
    n = n < 64 ? n + 1 : std::max(n + 1, (n * 21 + 10) / 20);
  }
  return s;
}

std::uint64_t SampleSchedule::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  };
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) mix(',');
    for (char c : std::to_string(values_[i])) mix(c);
  }
  return h;
}

std::size_t PsiRecordSeries::record_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const PsiEntry& e) { return e.is_record; }));
}

PsiRecordSeries psi_records(const IntervalExchange& f, const Scalar& t, const SampleSchedule& schedule,
                            SeparationKind kind) {
  const Scalar& b = f.total_length();
  if (t.sign() <= 0 || !(t < b)) {
    throw Error(ErrorCode::kDomain, "t = " + t.render() + " outside (0, " + b.render() + ")");
  }
  const long horizon = schedule.horizon();
  const auto& sched = schedule.values();

  PsiRecordSeries out;
  out.t = t;
  out.kind = kind;
  out.horizon = horizon;
  out.schedule_hash = schedule.hash();

  SeparationTracker tracker(f, t);
  std::size_t next = 0;
  bool have_max = false;
  bool have_tail = false;
  Scalar running_max;
  for (long n = 1; n <= horizon; ++n) {
    if (n > 1) tracker.advance();
    const bool scheduled = next < sched.size() && sched[next] == n;
    if (scheduled) ++next;
    if (out.zero_at) continue;

    Scalar v = kind == SeparationKind::kPsi ? tracker.rho_prime_n() : tracker.rho_n();
    if (v.is_zero()) {
      out.entries.push_back(PsiEntry{n, Scalar(0), false});
      out.zero_at = n;
      tracker.freeze();
      continue;
    }
    if (!scheduled) continue;
    Scalar value = Scalar(n) * v;
    const bool record = !have_max || running_max < value;
    if (record) {
      running_max = value;
      have_max = true;
    }
    if (2 * n >= horizon && (!have_tail || out.psi_hat < value)) {
      out.psi_hat = value;
      out.best_n = n;
      have_tail = true;
    }
    out.entries.push_back(PsiEntry{n, std::move(value), record});
  }

  out.dprime = tracker.dprime_hit();
  if (out.zero_at) {
    out.psi_hat = Scalar(0);
    out.best_n = 0;
  }
  out.valid = !out.zero_at && !out.dprime;
  return out;
}

const char* scan_class_name(ScanClass c) {
  switch (c) {
    case ScanClass::kDPrimeHit: return "DPrimeHit";
    case ScanClass::kPsiPositiveEvidence: return "PsiPositiveEvidence";
    case ScanClass::kUndecided: return "Undecided";
  }
  return "?";
}

Scalar default_threshold(const IntervalExchange& f) {
  return f.total_length() / Scalar(24 * static_cast<long>(f.size()));
}

namespace {

ScanRow classify(const IntervalExchange& f, const Scalar& t, const SampleSchedule& schedule,
                 const Threshold& threshold) {
  PsiRecordSeries s = psi_records(f, t, schedule);
  ScanRow row;
  row.t = t;
  row.psi_hat = s.psi_hat;
  row.record_count = s.record_count();
  row.best_n = s.best_n;
  if (s.best_n > 0) {
    for (const auto& e : s.entries) {
      if (e.n == s.best_n) row.best_value = e.value;
    }
  }
  if (s.dprime) {
    row.cls = ScanClass::kDPrimeHit;
    row.dprime_index = s.dprime->index;
  } else if (s.valid && threshold && !(s.psi_hat < *threshold)) {
    row.cls = ScanClass::kPsiPositiveEvidence;
  } else {
    row.cls = ScanClass::kUndecided;
  }
  return row;
}

}  // namespace

ScanResult scan_critical(const IntervalExchange& f, const std::vector<Scalar>& grid, long horizon,
                         const Threshold& threshold, unsigned jobs) {
  const Scalar& b = f.total_length();
  for (const auto& t : grid) {
    if (t.sign() <= 0 || !(t < b)) {
      throw Error(ErrorCode::kDomain, "grid point " + t.render() + " outside (0, " + b.render() + ")");
    }
  }
  const SampleSchedule schedule = SampleSchedule::hybrid(horizon);
  ScanResult result;
  result.horizon = horizon;
  result.schedule_hash = schedule.hash();
  result.threshold = threshold;
  result.rows.resize(grid.size());

  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    result.rows[i] = classify(f, grid[i], schedule, threshold);
  });

  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.t < b.t; });
  return result;
}

}  // namespace iet
