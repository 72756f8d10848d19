#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "iet/interval_exchange.hpp"
#include "iet/scalar.hpp"

namespace iet {

/// S_k = #{0 <= j < k : f^j(x) < t} for k = 0..N.
struct CocycleSeries {
  Scalar x;
  Scalar t;
  std::vector<std::int64_t> counts;

  long horizon() const { return static_cast<long>(counts.size()) - 1; }
};

/// Requires x in [0, b) and 0 < t <= b.
CocycleSeries visit_counts(const IntervalExchange& f, const Scalar& x, const Scalar& t, long n);

/// |1/n sum_{k<n} e^{2 pi i alpha S_k}| by direct compensated summation.
/// n defaults to the series horizon.
double weyl_value(const CocycleSeries& s, double alpha);
double weyl_value(const CocycleSeries& s, double alpha, long n);

/// The same sum grouped by value of S_k: S is nondecreasing with unit
/// steps, so the sum is a polynomial in e^{2 pi i alpha} whose coefficients
/// are run lengths. Costs O(S_n) instead of O(n).
class WeylEvaluator {
 public:
  explicit WeylEvaluator(const CocycleSeries& s);

  double value(double alpha, long n) const;
  /// Values for two prefixes n1 <= n2 in a single pass.
  std::pair<double, double> values(double alpha, long n1, long n2) const;
  long horizon() const { return horizon_; }

 private:
  std::vector<std::int64_t> starts_;  // first k with S_k = v, for v = 0..S_max
  std::vector<std::int64_t> counts_;
  long horizon_;
};

struct WeylPoint {
  double alpha = 0;
  double v_n = 0;
  double v_2n = 0;
  bool persistent = false;  // |v_n - v_2n| < kPersistenceTolerance
};

inline constexpr double kPersistenceTolerance = 0.05;

struct WeylScan {
  Scalar t;
  Scalar x;
  long horizon = 0;
  long grid_size = 0;
  double peak_threshold = 0;
  std::vector<WeylPoint> grid;        // alpha = j / grid_size
  std::vector<WeylPoint> candidates;  // refined local maxima in (0, 1/2], best first
  std::vector<WeylPoint> peaks;       // candidates with v_n >= peak_threshold
};

/// x = t/2, moved by +1/257 (mod b) until the orbit avoids D for |k| <= depth.
Scalar default_base_point(const IntervalExchange& f, const Scalar& t, long depth);

/// Weyl sums on the uniform grid plus coarse-to-fine refinement of the
/// strongest local maxima. Uses a series of length 2N for the doubling check.
WeylScan eigenvalue_scan(const IntervalExchange& f, const Scalar& t, long grid_size, long n,
                         const std::optional<Scalar>& x, double peak_threshold, unsigned jobs = 1);

struct BoundaryAverages {
  // index 0 and 1 for the intervals at t and at f(t)
  std::array<std::complex<double>, 2> alpha;  // (c - eps, c + eps)
  std::array<std::complex<double>, 2> beta;   // (c, c + eps)
  std::array<std::complex<double>, 2> gamma;  // (c - eps, c)
  long window = 0;                            // m, the averaging length
};

/// Averages of F_m(y) = 1/m sum_{j<m} e^{-2 pi i alpha S_j(y)} with
/// m = floor(horizon / 2) over `density` equispaced interior points of each
/// interval. F_m(f(y)) is within 2/m of e^{2 pi i alpha [y < t]} F_m(y).
/// Requires 0 < eps <= rho'_n(t).
BoundaryAverages boundary_averages(const IntervalExchange& f, const Scalar& t, double alpha, long n,
                                   const Scalar& eps, long density, long horizon);

}  // namespace iet
