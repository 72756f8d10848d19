#include "iet/induction.hpp"

#include <algorithm>
#include <numeric>

#include "iet/error.hpp"

namespace iet {
namespace {

std::optional<IntervalExchange> induced_exchange(const std::vector<InducedPiece>& pieces) {
  if (pieces.size() < 2) return std::nullopt;
  std::vector<std::size_t> by_image(pieces.size());
  std::iota(by_image.begin(), by_image.end(), 0);
  std::sort(by_image.begin(), by_image.end(), [&](std::size_t i, std::size_t j) {
    return pieces[i].interval.lo + pieces[i].translation <
           pieces[j].interval.lo + pieces[j].translation;
  });
  std::vector<int> perm(pieces.size());
  for (std::size_t pos = 0; pos < by_image.size(); ++pos) {
    perm[by_image[pos]] = static_cast<int>(pos + 1);
  }
  std::vector<Scalar> lengths;
  lengths.reserve(pieces.size());
  for (const auto& p : pieces) lengths.push_back(p.interval.length());
  return IntervalExchange(std::move(lengths), Permutation(std::move(perm)));
}

// Unfinished part of [0, t): origin [lo, lo + len) currently sits at
// [image, image + len) after `steps` applications of f.
struct Active {
  Scalar origin;
  Scalar length;
  Scalar image;
  long steps;
};

}  // namespace

InducedMap::InducedMap(Scalar t, std::vector<InducedPiece> pieces)
    : t_(std::move(t)), pieces_(std::move(pieces)), map_(induced_exchange(pieces_)) {}

const IntervalExchange& InducedMap::map() const {
  if (!map_) throw Error(ErrorCode::kPrecondition, "induced map has a single piece");
  return *map_;
}

const InducedPiece& InducedMap::piece_containing(const Scalar& x) const {
  if (x.sign() < 0 || !(x < t_)) {
    throw Error(ErrorCode::kDomain, "point " + x.render() + " outside [0, " + t_.render() + ")");
  }
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Scalar& v, const InducedPiece& p) { return v < p.interval.lo; });
  return *(it - 1);
}

Scalar InducedMap::evaluate(const Scalar& x) const { return x + piece_containing(x).translation; }

Scalar InducedMap::tower_mass() const {
  Scalar total;
  for (const auto& p : pieces_) total += Scalar(p.return_time) * p.interval.length();
  return total;
}

InducedMap induce(const IntervalExchange& f, const Scalar& t, long step_cap) {
  const Scalar& b = f.total_length();
  if (t.sign() <= 0 || b < t) {
    throw Error(ErrorCode::kDomain, "induction threshold " + t.render() + " outside (0, " +
                                        b.render() + "]");
  }
  const auto& bp = f.breakpoints();
  std::vector<InducedPiece> done;
  std::vector<Active> work;
  work.push_back(Active{Scalar(0), t, Scalar(0), 0});
  long steps = 0;

  while (!work.empty()) {
    Active a = std::move(work.back());
    work.pop_back();
    if (++steps > step_cap) {
      Scalar unfinished = a.length;
      for (const auto& w : work) unfinished += w.length;
      throw Error(ErrorCode::kStepCapExceeded,
                  "induction on [0, " + t.render() + ") exceeded " + std::to_string(step_cap) +
                      " steps; unfinished measure " + unfinished.render() + " (~" +
                      std::to_string(unfinished.to_double()) + ")");
    }
    const Scalar image_end = a.image + a.length;
    std::size_t seg = f.segment_of(a.image);
    Scalar cursor = a.image;
    while (cursor < image_end) {
      const Scalar& seg_end = bp[seg + 1];
      const Scalar& piece_end = image_end < seg_end ? image_end : seg_end;
      const Scalar& w = f.translations()[seg];
      Scalar origin = a.origin + (cursor - a.image);
      Scalar lo = cursor + w;
      Scalar hi = piece_end + w;
      const long next_steps = a.steps + 1;
      auto finish = [&](Scalar o, Scalar len, const Scalar& img) {
        Scalar shift = img - o;
        Scalar end = o + len;
        done.push_back(InducedPiece{Interval{std::move(o), std::move(end), false}, next_steps,
                                    std::move(shift)});
      };
      if (hi <= t) {
        finish(origin, hi - lo, lo);
      } else if (t <= lo) {
        work.push_back(Active{origin, hi - lo, lo, next_steps});
      } else {
        Scalar inside = t - lo;
        finish(origin, inside, lo);
        work.push_back(Active{origin + inside, hi - t, t, next_steps});
      }
      cursor = piece_end;
      ++seg;
    }
  }

  std::sort(done.begin(), done.end(),
            [](const InducedPiece& p, const InducedPiece& q) { return p.interval.lo < q.interval.lo; });
  return InducedMap(t, std::move(done));
}

long return_time(const IntervalExchange& f, const Scalar& t, const Scalar& x, long step_cap) {
  if (x.sign() < 0 || !(x < t)) {
    throw Error(ErrorCode::kDomain, "point " + x.render() + " outside [0, " + t.render() + ")");
  }
  Scalar y = x;
  for (long m = 1; m <= step_cap; ++m) {
    y = f.evaluate(y);
    if (y < t) return m;
  }
  throw Error(ErrorCode::kStepCapExceeded,
              "no return of " + x.render() + " within " + std::to_string(step_cap) + " steps");
}

bool is_basic(const IntervalExchange& f, const Interval& y) {
  if (!(y.lo < y.hi) || y.lo.sign() < 0 || f.total_length() < y.hi) return false;
  for (const auto& d : f.discontinuities()) {
    if (y.lo < d && d < y.hi) return false;
  }
  return true;
}

std::optional<Scalar> translation_constant(const IntervalExchange& f, const Interval& y) {
  if (!is_basic(f, y)) return std::nullopt;
  return f.translations()[f.segment_of(y.lo)];
}

bool levels_disjoint(const std::vector<Interval>& levels) {
  std::vector<const Interval*> sorted;
  sorted.reserve(levels.size());
  for (const auto& l : levels) sorted.push_back(&l);
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval* a, const Interval* b) { return a->lo < b->lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->lo < sorted[i - 1]->hi) return false;
  }
  return true;
}

namespace {

Scalar union_measure(const std::vector<Interval>& levels) {
  std::vector<const Interval*> sorted;
  sorted.reserve(levels.size());
  for (const auto& l : levels) sorted.push_back(&l);
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval* a, const Interval* b) { return a->lo < b->lo; });
  Scalar total;
  std::optional<Scalar> run_lo;
  std::optional<Scalar> run_hi;
  for (const Interval* l : sorted) {
    if (run_hi && l->lo <= *run_hi) {
      if (*run_hi < l->hi) run_hi = l->hi;
      continue;
    }
    if (run_hi) total += *run_hi - *run_lo;
    run_lo = l->lo;
    run_hi = l->hi;
  }
  if (run_hi) total += *run_hi - *run_lo;
  return total;
}

}  // namespace

Stack::Stack(std::vector<Interval> levels) : Stack(levels, levels_disjoint(levels)) {}

Stack::Stack(std::vector<Interval> levels, bool claimed_distinct)
    : levels_(std::move(levels)), distinct_(claimed_distinct) {
  if (levels_.empty()) throw Error(ErrorCode::kDomain, "a stack needs at least one level");
  width_ = levels_.front().length();
  measure_ = union_measure(levels_);
}

std::optional<StackViolation> verify_stack(const IntervalExchange& f, const Stack& s) {
  const auto& lv = s.levels();
  const Scalar& b = f.total_length();
  for (std::size_t k = 0; k < lv.size(); ++k) {
    const bool inside = lv[k].lo.sign() >= 0 && lv[k].hi <= b && lv[k].lo < lv[k].hi;
    if (!inside) return StackViolation{k + 1, StackDefect::kS1};
    if (k + 1 == lv.size()) break;
    auto w = translation_constant(f, lv[k]);
    if (!w) return StackViolation{k + 1, StackDefect::kS1};
    if (lv[k].lo + *w != lv[k + 1].lo || lv[k].hi + *w != lv[k + 1].hi) {
      return StackViolation{k + 1, StackDefect::kS2};
    }
  }
  if (s.distinct()) {
    std::vector<std::size_t> order(lv.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return lv[i].lo < lv[j].lo; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (lv[order[i]].lo < lv[order[i - 1]].hi) {
        return StackViolation{std::max(order[i], order[i - 1]) + 1, StackDefect::kOverlap};
      }
    }
  }
  return std::nullopt;
}

Stack stack_from_window(const IntervalExchange& f, const Scalar& x, long n, const Scalar& eps) {
  if (n < 0) throw Error(ErrorCode::kDomain, "window size must be non-negative");
  if (eps.sign() <= 0) throw Error(ErrorCode::kDomain, "radius must be positive");
  if (auto hit = dprime_probe(f, x, n)) {
    throw Error(ErrorCode::kPrecondition, "orbit of " + x.render() + " hits d_" +
                                              std::to_string(hit->discontinuity) + " at k=" +
                                              std::to_string(hit->index));
  }
  OrbitWindow w = orbit_window(f, x, n, /*symmetric=*/true);
  std::vector<Interval> levels;
  levels.reserve(w.points.size());
  for (const auto& p : w.points) levels.push_back(ball(p, eps));
  return Stack(std::move(levels));
}

namespace {

// First point of a discontinuity's forward orbit inside (0, bound). Taking
// Y = [0, y) with y on that orbit makes the cut point produced by y coincide
// with the one produced by the discontinuity, so the induced map has at most
// r intervals.
Scalar tall_stack_anchor(const IntervalExchange& f, const Scalar& bound, long step_cap) {
  std::vector<Scalar> orbit(f.discontinuities().begin(), f.discontinuities().end());
  for (long m = 0; m <= step_cap; ++m) {
    for (auto& p : orbit) {
      if (m > 0) p = f.evaluate(p);
      // 0 = f(d_j) for the interval placed first, so 0 itself is skipped
      if (p.sign() > 0 && p < bound) return p;
    }
  }
  throw Error(ErrorCode::kStepCapExceeded, "no discontinuity orbit entered (0, " +
                                               bound.render() + ") within " +
                                               std::to_string(step_cap) + " steps");
}

}  // namespace

TallStack build_tall_stack(const IntervalExchange& f, long min_height, long step_cap) {
  if (min_height < 1) throw Error(ErrorCode::kDomain, "stack height must be positive");
  const Scalar& b = f.total_length();
  const Scalar r(static_cast<long>(f.size()));
  const Scalar bound = b / (r * Scalar(min_height));
  Scalar anchor = tall_stack_anchor(f, bound, step_cap);
  InducedMap g = induce(f, anchor, step_cap);

  std::size_t best = 0;
  Scalar best_measure;
  for (std::size_t k = 0; k < g.pieces().size(); ++k) {
    const auto& p = g.pieces()[k];
    Scalar m = Scalar(p.return_time) * p.interval.length();
    if (k == 0 || best_measure < m) {
      best = k;
      best_measure = std::move(m);
    }
  }
  const InducedPiece& piece = g.pieces()[best];
  if (best_measure < b / r || piece.return_time < min_height) {
    throw Error(ErrorCode::kPrecondition,
                "tallest tower has height " + std::to_string(piece.return_time) + " and measure " +
                    best_measure.render() + "; f is probably not minimal");
  }

  std::vector<Interval> levels;
  levels.reserve(static_cast<std::size_t>(piece.return_time));
  const Scalar width = piece.interval.length();
  Scalar lo = piece.interval.lo;
  for (long j = 0; j < piece.return_time; ++j) {
    if (j > 0) lo = f.evaluate(lo);
    levels.push_back(Interval{lo, lo + width, true});
  }
  return TallStack{Stack(std::move(levels)), std::move(anchor), g.piece_count(), best};
}

Interval middle_third(const Interval& y) {
  const Scalar three(3);
  return open_interval((Scalar(2) * y.lo + y.hi) / three, (y.lo + Scalar(2) * y.hi) / three);
}

Stack trim_stack(const Stack& s) {
  const auto h = static_cast<long>(s.height());
  if (h < 6) throw Error(ErrorCode::kPrecondition, "trim needs a stack of height >= 6, got " +
                                                       std::to_string(h));
  const long p = h / 3;
  const long q = h - p + 1;
  std::vector<Interval> levels;
  levels.reserve(static_cast<std::size_t>(q - p - 1));
  for (long k = p + 1; k <= q - 1; ++k) {
    levels.push_back(middle_third(s.levels()[static_cast<std::size_t>(k - 1)]));
  }
  return Stack(std::move(levels));
}

}  // namespace iet
