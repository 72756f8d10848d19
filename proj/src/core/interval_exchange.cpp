#include "iet/interval_exchange.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "iet/error.hpp"

namespace iet {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const auto r = static_cast<int>(images_.size());
  if (r < 2) throw Error(ErrorCode::kDomain, "permutation needs at least 2 entries");
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > r || seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::kDomain, "permutation " + render() + " is not a bijection of 1.." +
                                          std::to_string(r));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t k = 0; k < images_.size(); ++k) {
    inv[static_cast<std::size_t>(images_[k] - 1)] = static_cast<int>(k + 1);
  }
  return Permutation(std::move(inv));
}

std::string Permutation::render() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < images_.size(); ++k) out << (k ? " " : "") << images_[k];
  out << ')';
  return out.str();
}

bool is_irreducible(const Permutation& perm) {
  int running_max = 0;
  for (std::size_t k = 0; k + 1 < perm.size(); ++k) {
    running_max = std::max(running_max, perm.images()[k]);
    if (running_max == static_cast<int>(k + 1)) return false;
  }
  return true;
}

bool Interval::contains(const Scalar& x) const {
  if (open) return lo < x && x < hi;
  return lo <= x && x < hi;
}

Interval open_interval(Scalar lo, Scalar hi) {
  if (!(lo < hi)) {
    throw Error(ErrorCode::kDomain, "empty interval (" + lo.render() + ", " + hi.render() + ")");
  }
  return Interval{std::move(lo), std::move(hi), true};
}

Interval ball(const Scalar& center, const Scalar& radius) {
  return open_interval(center - radius, center + radius);
}

IntervalExchange::IntervalExchange(std::vector<Scalar> lengths, Permutation perm)
    : lengths_(std::move(lengths)), perm_(std::move(perm)) {
  const std::size_t r = lengths_.size();
  if (r != perm_.size()) {
    throw Error(ErrorCode::kDomain, "got " + std::to_string(r) + " lengths for a permutation of " +
                                        std::to_string(perm_.size()) + " symbols");
  }
  breakpoints_.reserve(r + 1);
  breakpoints_.emplace_back(0);
  for (std::size_t k = 0; k < r; ++k) {
    if (lengths_[k].sign() <= 0) {
      throw Error(ErrorCode::kDomain,
                  "length " + std::to_string(k + 1) + " is not positive: " + lengths_[k].render());
    }
    if (!lengths_[k].is_rational()) {
      if (radicand_ != 0 && radicand_ != lengths_[k].radicand()) {
        throw Error(ErrorCode::kFieldMismatch, "lengths span more than one quadratic field");
      }
      radicand_ = lengths_[k].radicand();
    }
    breakpoints_.push_back(breakpoints_.back() + lengths_[k]);
  }

  source_at_position_.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    source_at_position_[static_cast<std::size_t>(perm_.images()[k] - 1)] = k;
  }
  image_breakpoints_.reserve(r + 1);
  image_breakpoints_.emplace_back(0);
  for (std::size_t p = 0; p < r; ++p) {
    image_breakpoints_.push_back(image_breakpoints_.back() + lengths_[source_at_position_[p]]);
  }
  translations_.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto p = static_cast<std::size_t>(perm_.images()[k] - 1);
    translations_[k] = image_breakpoints_[p] - breakpoints_[k];
  }
}

bool IntervalExchange::in_domain(const Scalar& x) const {
  return x.sign() >= 0 && x < total_length();
}

std::size_t IntervalExchange::segment_of(const Scalar& x) const {
  auto it = std::upper_bound(breakpoints_.begin() + 1, breakpoints_.end(), x);
  return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
}

std::optional<std::size_t> IntervalExchange::discontinuity_index(const Scalar& x) const {
  auto d = discontinuities();
  auto it = std::lower_bound(d.begin(), d.end(), x);
  if (it != d.end() && *it == x) return static_cast<std::size_t>(it - d.begin()) + 1;
  return std::nullopt;
}

Scalar IntervalExchange::evaluate(const Scalar& x) const {
  if (!in_domain(x)) {
    throw Error(ErrorCode::kDomain,
                "point " + x.render() + " outside [0, " + total_length().render() + ")");
  }
  return x + translations_[segment_of(x)];
}

Scalar IntervalExchange::evaluate_inverse(const Scalar& y) const {
  if (!in_domain(y)) {
    throw Error(ErrorCode::kDomain,
                "point " + y.render() + " outside [0, " + total_length().render() + ")");
  }
  auto it = std::upper_bound(image_breakpoints_.begin() + 1, image_breakpoints_.end(), y);
  const auto p = static_cast<std::size_t>(it - image_breakpoints_.begin()) - 1;
  return y - translations_[source_at_position_[p]];
}

IntervalExchange IntervalExchange::inverse() const {
  std::vector<Scalar> lengths;
  lengths.reserve(size());
  for (std::size_t p = 0; p < size(); ++p) lengths.push_back(lengths_[source_at_position_[p]]);
  return IntervalExchange(std::move(lengths), perm_.inverse());
}

OrbitWindow orbit_window(const IntervalExchange& f, const Scalar& x, long n, bool symmetric) {
  if (n < 0) throw Error(ErrorCode::kDomain, "orbit window size must be non-negative");
  if (!f.in_domain(x)) throw Error(ErrorCode::kDomain, "point " + x.render() + " outside domain");
  const long forward = symmetric ? n : n - 1;
  OrbitWindow w;
  w.first = -n;
  w.points.resize(static_cast<std::size_t>(n + 1 + std::max(forward, 0L)));
  const auto origin = static_cast<std::size_t>(n);
  w.points[origin] = x;
  for (long k = 1; k <= n; ++k) {
    const auto i = origin - static_cast<std::size_t>(k);
    w.points[i] = f.evaluate_inverse(w.points[i + 1]);
  }
  for (long k = 1; k <= forward; ++k) {
    const auto i = origin + static_cast<std::size_t>(k);
    w.points[i] = f.evaluate(w.points[i - 1]);
  }
  if (forward < 0) w.points.pop_back();  // n == 0, asymmetric: empty window
  return w;
}

std::optional<IdocCollision> check_idoc(const IntervalExchange& f, long depth) {
  std::vector<Scalar> orbit(f.discontinuities().begin(), f.discontinuities().end());
  for (long m = 1; m <= depth; ++m) {
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      orbit[i] = f.evaluate(orbit[i]);
      if (auto j = f.discontinuity_index(orbit[i])) return IdocCollision{m, i + 1, *j};
    }
  }
  return std::nullopt;
}

std::optional<DPrimeHit> dprime_probe(const IntervalExchange& f, const Scalar& x, long depth) {
  if (!f.in_domain(x)) throw Error(ErrorCode::kDomain, "point " + x.render() + " outside domain");
  if (auto j = f.discontinuity_index(x)) return DPrimeHit{0, *j};
  Scalar forward = x;
  Scalar backward = x;
  for (long k = 1; k <= depth; ++k) {
    forward = f.evaluate(forward);
    if (auto j = f.discontinuity_index(forward)) return DPrimeHit{k, *j};
    backward = f.evaluate_inverse(backward);
    if (auto j = f.discontinuity_index(backward)) return DPrimeHit{-k, *j};
  }
  return std::nullopt;
}

}  // namespace iet
