#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iet/scalar.hpp"

namespace iet {

/// Permutation in one-line notation: images()[k-1] is the position that the
/// k-th exchanged interval occupies after the map is applied.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  std::size_t size() const { return images_.size(); }
  int operator()(int k) const { return images_[static_cast<std::size_t>(k - 1)]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  std::string render() const;

 private:
  std::vector<int> images_;
};

/// True iff no proper prefix {1..k}, k < r, is mapped onto itself.
bool is_irreducible(const Permutation& perm);

/// Interval with exact endpoints. Half-open [lo, hi) unless `open` is set.
struct Interval {
  Scalar lo;
  Scalar hi;
  bool open = false;

  Scalar length() const { return hi - lo; }
  bool contains(const Scalar& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval open_interval(Scalar lo, Scalar hi);
/// B_eps(x) = (x - eps, x + eps).
Interval ball(const Scalar& center, const Scalar& radius);

/// An r-IET on [0, b): the map x -> x + w_k on X_k = [d_{k-1}, d_k).
/// Immutable after construction.
class IntervalExchange {
 public:
  IntervalExchange(std::vector<Scalar> lengths, Permutation perm);

  std::size_t size() const { return lengths_.size(); }
  const Scalar& total_length() const { return breakpoints_.back(); }
  const std::vector<Scalar>& lengths() const { return lengths_; }
  const Permutation& permutation() const { return perm_; }
  /// d_0 = 0 < d_1 < ... < d_r = b.
  const std::vector<Scalar>& breakpoints() const { return breakpoints_; }
  /// The discontinuity set D = {d_1, ..., d_{r-1}}.
  std::span<const Scalar> discontinuities() const {
    return std::span<const Scalar>(breakpoints_).subspan(1, size() - 1);
  }
  const std::vector<Scalar>& translations() const { return translations_; }
  /// Radicand shared by all lengths (0 when everything is rational).
  std::uint64_t radicand() const { return radicand_; }

  bool in_domain(const Scalar& x) const;
  /// 0-based k with d_k <= x < d_{k+1}. Requires in_domain(x).
  std::size_t segment_of(const Scalar& x) const;
  /// 1-based j with x == d_j, if x is a discontinuity.
  std::optional<std::size_t> discontinuity_index(const Scalar& x) const;

  Scalar evaluate(const Scalar& x) const;
  Scalar evaluate_inverse(const Scalar& y) const;
  IntervalExchange inverse() const;

 private:
  std::vector<Scalar> lengths_;
  Permutation perm_;
  std::vector<Scalar> breakpoints_;
  std::vector<Scalar> translations_;
  // image side: start of each image position and the source interval there
  std::vector<Scalar> image_breakpoints_;
  std::vector<std::size_t> source_at_position_;
  std::uint64_t radicand_ = 0;
};

/// f^k(x) for k in [first, first + points.size()).
struct OrbitWindow {
  long first = 0;
  std::vector<Scalar> points;

  long last() const { return first + static_cast<long>(points.size()) - 1; }
  const Scalar& at(long k) const { return points.at(static_cast<std::size_t>(k - first)); }
};

/// k = -n..n-1, or -n..n when `symmetric`.
OrbitWindow orbit_window(const IntervalExchange& f, const Scalar& x, long n, bool symmetric = false);

struct IdocCollision {
  long steps;             // m with f^m(d_from) = d_to
  std::size_t from;       // 1-based
  std::size_t to;         // 1-based
};

/// Looks for f^m(d_i) = d_j with 1 <= m <= depth. Empty result means none
/// was found (evidence of the Keane condition up to depth).
std::optional<IdocCollision> check_idoc(const IntervalExchange& f, long depth);

struct DPrimeHit {
  long index;                // k with f^k(x) in D
  std::size_t discontinuity; // 1-based j with f^k(x) = d_j
};

/// Scans k = 0, 1, -1, 2, -2, ... up to |k| <= depth for an orbit point in D.
std::optional<DPrimeHit> dprime_probe(const IntervalExchange& f, const Scalar& x, long depth);

}  // namespace iet
