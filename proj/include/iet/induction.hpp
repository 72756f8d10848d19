#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "iet/interval_exchange.hpp"
#include "iet/scalar.hpp"

namespace iet {

inline constexpr long kDefaultStepCap = 1'000'000;

/// A maximal subinterval of [0, t) on which the whole itinerary up to the
/// first return is constant.
struct InducedPiece {
  Interval interval;    // half-open
  long return_time;     // m >= 1 with f^m(x) back in [0, t)
  Scalar translation;   // f^m(x) - x on the piece
};

/// The first-return map f_t of f on [0, t).
class InducedMap {
 public:
  InducedMap(Scalar t, std::vector<InducedPiece> pieces);

  const Scalar& threshold() const { return t_; }
  const std::vector<InducedPiece>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  /// f_t as an IET on [0, t). Throws kPrecondition when there is a single
  /// piece (f_t is the identity, which is not an r-IET for r >= 2).
  const IntervalExchange& map() const;

  const InducedPiece& piece_containing(const Scalar& x) const;
  Scalar evaluate(const Scalar& x) const;
  /// Sum of return_time * length over the pieces; equals b when the towers
  /// over the pieces tile [0, b).
  Scalar tower_mass() const;

 private:
  Scalar t_;
  std::vector<InducedPiece> pieces_;
  std::optional<IntervalExchange> map_;
};

/// Forward interval splitting: the image of every unfinished subinterval is
/// cut at D and at t until everything has returned to [0, t). Requires
/// 0 < t <= b. Throws kStepCapExceeded after `step_cap` interval steps.
InducedMap induce(const IntervalExchange& f, const Scalar& t, long step_cap = kDefaultStepCap);

/// Least m >= 1 with f^m(x) in [0, t), by direct iteration.
long return_time(const IntervalExchange& f, const Scalar& t, const Scalar& x,
                 long step_cap = kDefaultStepCap);

bool is_basic(const IntervalExchange& f, const Interval& y);
/// f(y) - y for a basic interval, empty otherwise.
std::optional<Scalar> translation_constant(const IntervalExchange& f, const Interval& y);

/// Finite sequence of open intervals. Width, measure and distinctness are
/// computed once at construction.
class Stack {
 public:
  explicit Stack(std::vector<Interval> levels);
  /// Records a caller-asserted distinctness flag instead of computing it;
  /// verify_stack checks the claim.
  Stack(std::vector<Interval> levels, bool claimed_distinct);

  const std::vector<Interval>& levels() const { return levels_; }
  std::size_t height() const { return levels_.size(); }
  const Scalar& width() const { return width_; }
  /// Lebesgue measure of the union of the levels.
  const Scalar& measure() const { return measure_; }
  bool distinct() const { return distinct_; }

 private:
  std::vector<Interval> levels_;
  Scalar width_;
  Scalar measure_;
  bool distinct_ = false;
};

/// Pairwise disjointness, by sorting endpoints.
bool levels_disjoint(const std::vector<Interval>& levels);

enum class StackDefect { kS1, kS2, kOverlap };

struct StackViolation {
  std::size_t level;  // 1-based
  StackDefect which;
};

/// Checks (s1) every level but the last is an f-basic subinterval of X,
/// (s2) f maps each level onto the next, and disjointness when the stack
/// claims to be distinct.
std::optional<StackViolation> verify_stack(const IntervalExchange& f, const Stack& s);

/// (B_eps(f^k(x))) for k = -n..n. Throws kPrecondition if the orbit meets D
/// inside the window.
Stack stack_from_window(const IntervalExchange& f, const Scalar& x, long n, const Scalar& eps);

struct TallStack {
  Stack stack;
  Scalar anchor;             // Y = [0, anchor)
  std::size_t induced_pieces;
  std::size_t tower_index;   // 0-based piece the tower sits over
};

/// Distinct stack of height >= min_height and measure >= b/r, built from the
/// towers over a short interval [0, y) with y < b/(r * min_height).
TallStack build_tall_stack(const IntervalExchange& f, long min_height,
                           long step_cap = kDefaultStepCap);

/// Concentric subinterval of a third of the length.
Interval middle_third(const Interval& y);

/// Middle thirds of levels p+1 .. q-1 where p = floor(h/3) and q = h - p + 1.
Stack trim_stack(const Stack& s);

}  // namespace iet
