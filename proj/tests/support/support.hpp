#pragma once
// Shared test helpers: seeded generators and brute-force oracles that do not
// reuse the library's incremental algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iet/config.hpp"
#include "iet/interval_exchange.hpp"
#include "iet/scalar.hpp"

namespace iet::testing {

using Rng = std::mt19937_64;

inline const char* kQuadratic4321[] = {"6/19+1/11*sqrt(5)", "2/19", "4/19", "7/19-1/11*sqrt(5)"};

inline IntervalExchange quadratic_4321() {
  std::vector<Scalar> ls;
  for (const char* s : kQuadratic4321) ls.push_back(Scalar::parse(s));
  return IntervalExchange(std::move(ls), Permutation({4, 3, 2, 1}));
}

inline IntervalExchange rotation(long num, long den) {
  return IntervalExchange({Scalar::from_fraction(den - num, den), Scalar::from_fraction(num, den)},
                          Permutation({2, 1}));
}

inline long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Scalar random_rational(Rng& rng, long max_num, long max_den) {
  long den = uniform(rng, 1, max_den);
  return Scalar::from_fraction(uniform(rng, -max_num, max_num), den);
}

inline Permutation random_irreducible(Rng& rng, int r) {
  std::vector<int> v(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) v[static_cast<std::size_t>(k)] = k + 1;
  for (;;) {
    std::shuffle(v.begin(), v.end(), rng);
    Permutation p(v);
    if (is_irreducible(p)) return p;
  }
}

/// Rational lengths with a large common denominator and b = 1, so orbits of
/// the discontinuities are long before they close up.
inline IntervalExchange random_rational_iet(Rng& rng, int r, long idoc_depth = 1000) {
  for (;;) {
    const long den = uniform(rng, 200'000, 1'000'000);
    std::vector<long> cuts;
    while (static_cast<int>(cuts.size()) < r - 1) {
      long c = uniform(rng, 1, den - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(den);
    std::vector<Scalar> ls;
    for (int k = 0; k < r; ++k) {
      ls.push_back(Scalar::from_fraction(cuts[static_cast<std::size_t>(k + 1)] - cuts[static_cast<std::size_t>(k)], den));
    }
    IntervalExchange f(std::move(ls), random_irreducible(rng, r));
    if (idoc_depth <= 0 || !check_idoc(f, idoc_depth)) return f;
  }
}

/// Random point of [lo, hi) with denominator `den` resolution, exact.
inline Scalar random_point(Rng& rng, const Scalar& lo, const Scalar& hi, long den = 1'000'003) {
  const long k = uniform(rng, 0, den - 1);
  return lo + (hi - lo) * Scalar::from_fraction(k, den);
}

// ---- oracles ---------------------------------------------------------------

/// f applied m times by plain iteration.
inline Scalar iterate(const IntervalExchange& f, Scalar x, long m) {
  for (long i = 0; i < m; ++i) x = f.evaluate(x);
  for (long i = 0; i > m; --i) x = f.evaluate_inverse(x);
  return x;
}

/// Window -n..n-1 (or -n..n) by independent forward/backward iteration.
inline std::vector<Scalar> brute_window(const IntervalExchange& f, const Scalar& x, long n, bool symmetric) {
  std::vector<Scalar> out;
  const long last = symmetric ? n : n - 1;
  for (long k = -n; k <= last; ++k) out.push_back(iterate(f, x, k));
  return out;
}

inline Scalar brute_rho(const IntervalExchange& f, const Scalar& x) {
  Scalar best = abs(x - f.breakpoints()[0]);
  for (const auto& d : f.breakpoints()) best = min(best, abs(x - d));
  return best;
}

inline Scalar brute_rho_n(const IntervalExchange& f, const Scalar& x, long n) {
  auto w = brute_window(f, x, n, false);
  Scalar best = brute_rho(f, w[0]);
  for (const auto& p : w) best = min(best, brute_rho(f, p));
  return best;
}

/// O(n^2) pairwise minimum over the symmetric window.
inline Scalar brute_delta_n(const IntervalExchange& f, const Scalar& x, long n) {
  auto w = brute_window(f, x, n, true);
  Scalar best = abs(w[0] - w[1]);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) best = min(best, abs(w[i] - w[j]));
  }
  return best;
}

inline Scalar brute_rho_prime_n(const IntervalExchange& f, const Scalar& x, long n) {
  return min(brute_rho_n(f, x, n), brute_delta_n(f, x, n) / Scalar(2));
}

/// Pointwise first return to [0, t).
inline std::pair<long, Scalar> first_return(const IntervalExchange& f, const Scalar& t, Scalar x,
                                            long cap = 10'000'000) {
  for (long m = 1; m <= cap; ++m) {
    x = f.evaluate(x);
    if (x < t) return {m, x};
  }
  return {-1, x};
}

/// Rotation x -> x + a mod 1 in long double; used as an arithmetic-free
/// cross-check of orbit positions for the golden rotation.
inline long double rotate_ld(long double x, long double a, long k) {
  long double y = x + a * static_cast<long double>(k);
  y -= std::floor(y);
  return y;
}

struct CircleSeparation {
  long double n_rho_prime;   // n * min(rho_n, delta_n / 2)
  int distinct_gaps;         // circle gap lengths, up to 1e-15
};

/// Rotation by a on [0,1) (discontinuity at 1 - a), point t, in long double.
/// The symmetric window t + k a, |k| <= n, is a translate of {k a}, so by the
/// three-distance theorem its circle gaps take at most three values; the
/// caller checks that as a sanity test of the oracle itself.
inline CircleSeparation rotation_separation(long double a, long double t, long n) {
  std::vector<long double> sym;
  long double rho_n = 1.0L;
  const long double d1 = 1.0L - a;
  for (long k = -n; k <= n; ++k) {
    long double p = rotate_ld(t, a, k);
    sym.push_back(p);
    if (k <= n - 1) rho_n = std::min({rho_n, p, std::fabs(p - d1), 1.0L - p});
  }
  std::sort(sym.begin(), sym.end());
  long double gap = 1.0L;
  std::vector<long double> gaps;
  for (std::size_t i = 1; i < sym.size(); ++i) {
    gap = std::min(gap, sym[i] - sym[i - 1]);
    gaps.push_back(sym[i] - sym[i - 1]);
  }
  gaps.push_back(1.0L - sym.back() + sym.front());
  std::sort(gaps.begin(), gaps.end());
  int distinct = 1;
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] - gaps[i - 1] > 1e-15L) ++distinct;
  }
  return {static_cast<long double>(n) * std::min(rho_n, gap / 2), distinct};
}

}  // namespace iet::testing
