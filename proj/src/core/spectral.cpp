#include "iet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iet/diophantine.hpp"
#include "iet/error.hpp"
#include "parallel.hpp"

namespace iet {
namespace {

constexpr long kReanchorEvery = 128;
constexpr std::size_t kRefinedPeaks = 8;

std::complex<double> unit(double alpha, std::int64_t v) {
  double p = alpha * static_cast<double>(v);
  p -= std::floor(p);
  const double angle = 2.0 * std::numbers::pi * p;
  return {std::cos(angle), std::sin(angle)};
}

// Neumaier summation of one real component.
struct CompensatedSum {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

void check_prefix(long n, long horizon) {
  if (n < 1 || n > horizon) {
    throw Error(ErrorCode::kDomain,
                "prefix " + std::to_string(n) + " outside 1.." + std::to_string(horizon));
  }
}

}  // namespace

CocycleSeries visit_counts(const IntervalExchange& f, const Scalar& x, const Scalar& t, long n) {
  if (!f.in_domain(x)) throw Error(ErrorCode::kDomain, "point " + x.render() + " outside domain");
  if (t.sign() <= 0 || f.total_length() < t) {
    throw Error(ErrorCode::kDomain, "t = " + t.render() + " outside (0, b]");
  }
  if (n < 1) throw Error(ErrorCode::kDomain, "horizon must be at least 1");
  CocycleSeries s{x, t, {}};
  s.counts.reserve(static_cast<std::size_t>(n) + 1);
  s.counts.push_back(0);
  Scalar y = x;
  for (long k = 0; k < n; ++k) {
    s.counts.push_back(s.counts.back() + (y < t ? 1 : 0));
    if (k + 1 < n) y = f.evaluate(y);
  }
  return s;
}

double weyl_value(const CocycleSeries& s, double alpha) { return weyl_value(s, alpha, s.horizon()); }

double weyl_value(const CocycleSeries& s, double alpha, long n) {
  check_prefix(n, s.horizon());
  CompensatedSum re;
  CompensatedSum im;
  for (long k = 0; k < n; ++k) {
    const auto z = unit(alpha, s.counts[static_cast<std::size_t>(k)]);
    re.add(z.real());
    im.add(z.imag());
  }
  return std::hypot(re.value(), im.value()) / static_cast<double>(n);
}

WeylEvaluator::WeylEvaluator(const CocycleSeries& s) : horizon_(s.horizon()) {
  if (horizon_ < 1) throw Error(ErrorCode::kDomain, "empty series");
  counts_.assign(s.counts.begin(), s.counts.end() - 1);
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (k == 0 || counts_[k] != counts_[k - 1]) starts_.push_back(static_cast<std::int64_t>(k));
  }
}

double WeylEvaluator::value(double alpha, long n) const { return values(alpha, n, n).first; }

std::pair<double, double> WeylEvaluator::values(double alpha, long n1, long n2) const {
  check_prefix(n1, horizon_);
  check_prefix(n2, horizon_);
  if (n2 < n1) std::swap(n1, n2);
  const std::int64_t last1 = counts_[static_cast<std::size_t>(n1 - 1)];
  const std::int64_t last2 = counts_[static_cast<std::size_t>(n2 - 1)];
  const auto z = unit(alpha, 1);
  std::complex<double> w(1.0, 0.0);
  CompensatedSum re1, im1, re2, im2;
  for (std::int64_t v = 0; v <= last2; ++v) {
    if (v % kReanchorEvery == 0) {
      w = unit(alpha, v);
    } else {
      w *= z;
    }
    const auto start = starts_[static_cast<std::size_t>(v)];
    const auto end2 = v < last2 ? starts_[static_cast<std::size_t>(v + 1)] : n2;
    const auto weight2 = static_cast<double>(end2 - start);
    re2.add(weight2 * w.real());
    im2.add(weight2 * w.imag());
    if (v <= last1) {
      const auto end1 = v < last1 ? starts_[static_cast<std::size_t>(v + 1)] : n1;
      const auto weight1 = static_cast<double>(end1 - start);
      re1.add(weight1 * w.real());
      im1.add(weight1 * w.imag());
    }
  }
  return {std::hypot(re1.value(), im1.value()) / static_cast<double>(n1),
          std::hypot(re2.value(), im2.value()) / static_cast<double>(n2)};
}

Scalar default_base_point(const IntervalExchange& f, const Scalar& t, long depth) {
  const Scalar& b = f.total_length();
  const Scalar step = Scalar::from_fraction(1, 257);
  Scalar x = t / Scalar(2);
  for (int attempt = 0; attempt < 1024; ++attempt) {
    if (!dprime_probe(f, x, depth)) return x;
    x += step;
    if (!(x < b)) x -= b;
  }
  throw Error(ErrorCode::kPrecondition, "no base point near t/2 avoids D' up to depth " +
                                            std::to_string(depth));
}

WeylScan eigenvalue_scan(const IntervalExchange& f, const Scalar& t, long grid_size, long n,
                         const std::optional<Scalar>& x, double peak_threshold, unsigned jobs) {
  if (grid_size < 2) throw Error(ErrorCode::kDomain, "grid size must be at least 2");
  if (n < 1) throw Error(ErrorCode::kDomain, "horizon must be at least 1");
  WeylScan scan;
  scan.t = t;
  scan.x = x ? *x : default_base_point(f, t, n);
  scan.horizon = n;
  scan.grid_size = grid_size;
  scan.peak_threshold = peak_threshold;

  const CocycleSeries series = visit_counts(f, scan.x, t, 2 * n);
  const WeylEvaluator eval(series);
  const auto g = static_cast<std::size_t>(grid_size);
  const double spacing = 1.0 / static_cast<double>(grid_size);

  auto full = [&](double alpha) {
    auto [vn, v2n] = eval.values(alpha, n, 2 * n);
    return WeylPoint{alpha, vn, v2n, std::fabs(vn - v2n) < kPersistenceTolerance};
  };

  scan.grid.resize(g);
  detail::parallel_for(g, jobs, [&](std::size_t j) {
    scan.grid[j] = full(static_cast<double>(j) * spacing);
  });

  // Coarse pass at the horizon where one grid spacing resolves a peak:
  // S_M is about M t / b, so peaks have width about b / (t M).
  const double ratio = (f.total_length() / t).to_double();
  const long coarse = std::clamp(
      static_cast<long>(std::llround(static_cast<double>(grid_size) * ratio / 2.0)), 1L, n);
  std::vector<double> c(g);
  detail::parallel_for(g, jobs, [&](std::size_t j) {
    c[j] = eval.value(static_cast<double>(j) * spacing, coarse);
  });
  std::vector<std::size_t> maxima;
  for (std::size_t j = 1; j <= g / 2; ++j) {
    if (c[j] >= c[j - 1] && c[j] >= c[(j + 1) % g]) maxima.push_back(j);
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
  if (maxima.size() > kRefinedPeaks) maxima.resize(kRefinedPeaks);

  // Frequencies within half a spacing of 0 belong to the trivial eigenvalue.
  const double lo = spacing / 2;
  const double hi = 1.0 - spacing / 2;
  std::vector<WeylPoint> refined(maxima.size());
  detail::parallel_for(maxima.size(), jobs, [&](std::size_t i) {
    double alpha = static_cast<double>(maxima[i]) * spacing;
    double h = spacing;
    long m = coarse;
    while (m < n) {
      m = std::min(2 * m, n);
      h /= 2;
      double best_alpha = alpha;
      double best = eval.value(alpha, m);
      for (int step = -4; step <= 4; ++step) {
        const double a = alpha + step * h;
        if (step == 0 || a < lo || a > hi) continue;
        const double v = eval.value(a, m);
        if (v > best) {
          best = v;
          best_alpha = a;
        }
      }
      alpha = best_alpha;
    }
    refined[i] = full(alpha);
  });
  std::stable_sort(refined.begin(), refined.end(),
                   [](const WeylPoint& a, const WeylPoint& b) { return a.v_n > b.v_n; });
  for (const auto& p : refined) {
    const bool duplicate = std::any_of(scan.candidates.begin(), scan.candidates.end(),
                                       [&](const WeylPoint& q) { return std::fabs(q.alpha - p.alpha) < 1e-12; });
    if (duplicate) continue;
    scan.candidates.push_back(p);
    if (p.v_n >= peak_threshold) scan.peaks.push_back(p);
  }
  return scan;
}

namespace {

std::complex<double> surrogate(const IntervalExchange& f, const Scalar& t, double alpha, Scalar y,
                               long m) {
  std::complex<double> sum(0.0, 0.0);
  std::int64_t s = 0;
  for (long j = 0; j < m; ++j) {
    sum += std::conj(unit(alpha, s));
    if (y < t) ++s;
    if (j + 1 < m) y = f.evaluate(y);
  }
  return sum / static_cast<double>(m);
}

std::complex<double> interval_average(const IntervalExchange& f, const Scalar& t, double alpha,
                                      const Scalar& lo, const Scalar& hi, long density, long m) {
  const Scalar step = (hi - lo) / Scalar(density + 1);
  std::complex<double> sum(0.0, 0.0);
  for (long i = 1; i <= density; ++i) sum += surrogate(f, t, alpha, lo + Scalar(i) * step, m);
  return sum / static_cast<double>(density);
}

}  // namespace

BoundaryAverages boundary_averages(const IntervalExchange& f, const Scalar& t, double alpha, long n,
                                   const Scalar& eps, long density, long horizon) {
  const Scalar& b = f.total_length();
  if (t.sign() <= 0 || !(t < b)) {
    throw Error(ErrorCode::kDomain, "t = " + t.render() + " outside (0, " + b.render() + ")");
  }
  if (density < 1) throw Error(ErrorCode::kDomain, "sample density must be positive");
  if (horizon < 2) throw Error(ErrorCode::kDomain, "horizon must be at least 2");
  if (eps.sign() <= 0) throw Error(ErrorCode::kDomain, "eps must be positive");
  const Scalar bound = rho_prime_n(f, t, n);
  if (bound < eps) {
    throw Error(ErrorCode::kPrecondition, "eps = " + eps.render() + " exceeds rho'_" +
                                              std::to_string(n) + "(t) = " + bound.render());
  }
  BoundaryAverages out;
  out.window = horizon / 2;
  const Scalar centers[2] = {t, f.evaluate(t)};
  for (int k = 0; k < 2; ++k) {
    const Scalar& c = centers[k];
    out.alpha[k] = interval_average(f, t, alpha, c - eps, c + eps, density, out.window);
    out.beta[k] = interval_average(f, t, alpha, c, c + eps, density, out.window);
    out.gamma[k] = interval_average(f, t, alpha, c - eps, c, density, out.window);
  }
  return out;
}

}  // namespace iet
