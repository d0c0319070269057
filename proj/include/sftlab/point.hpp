#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

/// Finite presentation ...LLL C RRR... of a bi-infinite sequence. Presentation position 0
/// is the first center symbol (or the first right-cycle symbol when the center is empty);
/// the point's coordinate n sits at presentation position n + phase.
struct EventuallyPeriodicPoint {
  Word left_cycle;
  Word center;
  Word right_cycle;
  long phase = 0;

  Symbol at(long n) const {
    long j = n + phase;
    const long c = static_cast<long>(center.size());
    if (j >= 0 && j < c) return center[static_cast<std::size_t>(j)];
    if (j >= c) {
      const long r = static_cast<long>(right_cycle.size());
      return right_cycle[static_cast<std::size_t>((j - c) % r)];
    }
    const long l = static_cast<long>(left_cycle.size());
    return left_cycle[static_cast<std::size_t>(((j % l) + l) % l)];
  }

  /// Coordinates [begin, end).
  Word window(long begin, long end) const {
    Word w;
    for (long n = begin; n < end; ++n) w.push_back(at(n));
    return w;
  }

  /// Below this coordinate the point repeats its left cycle.
  long left_boundary() const { return -phase; }
  /// From this coordinate on the point repeats its right cycle.
  long right_boundary() const { return static_cast<long>(center.size()) - phase; }
};

namespace detail {

inline long primitive_period(const Word& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + p < n && ok; ++i) ok = cycle[i] == cycle[i + p];
    if (ok) return static_cast<long>(p);
  }
  return static_cast<long>(n);
}

}  // namespace detail

/// Canonical presentation: primitive cycles, shortest center, and for points whose periodic
/// regions overlap the seam is placed as close to coordinate 0 as possible. Two presentations
/// denote the same point iff their canonical forms are identical.
inline EventuallyPeriodicPoint canonical(const EventuallyPeriodicPoint& x) {
  if (x.left_cycle.empty() || x.right_cycle.empty()) fail(ErrorCode::InvalidPoint, "empty cycle");
  auto f = [&x](long n) { return x.at(n); };
  const long lo = x.left_boundary(), hi = x.right_boundary();
  const long pl = detail::primitive_period(x.left_cycle);
  const long pr = detail::primitive_period(x.right_cycle);
  const long scan_lo = std::min(lo, 0L) - pl - pr;
  const long scan_hi = std::max(hi, 0L) + pl + pr;
  // s: least coordinate from which x is pr-periodic; e: greatest coordinate below which x is pl-periodic
  long s = hi;
  while (s > scan_lo && f(s - 1) == f(s - 1 + pr)) --s;
  long e = lo;
  while (e < scan_hi && f(e) == f(e - pl)) ++e;
  EventuallyPeriodicPoint out;
  long t0, t1;
  if (e >= s) {
    t0 = t1 = std::clamp(0L, s, e);
  } else {
    t0 = e;
    t1 = s;
  }
  out.left_cycle = x.window(t0 - pl, t0);
  out.center = x.window(t0, t1);
  out.right_cycle = x.window(t1, t1 + pr);
  out.phase = -t0;
  return out;
}

inline bool operator==(const EventuallyPeriodicPoint& a, const EventuallyPeriodicPoint& b) {
  auto ca = canonical(a), cb = canonical(b);
  return ca.left_cycle == cb.left_cycle && ca.center == cb.center && ca.right_cycle == cb.right_cycle &&
         ca.phase == cb.phase;
}

/// Point x with x_n = f(n), given that f is periodic with left_period below lo and with
/// right_period from hi on.
inline EventuallyPeriodicPoint point_from_sequence(const std::function<Symbol(long)>& f, long lo, long hi,
                                                   long left_period, long right_period) {
  EventuallyPeriodicPoint p;
  for (long n = lo - left_period; n < lo; ++n) p.left_cycle.push_back(f(n));
  for (long n = lo; n < hi; ++n) p.center.push_back(f(n));
  for (long n = hi; n < hi + right_period; ++n) p.right_cycle.push_back(f(n));
  p.phase = -lo;
  return canonical(p);
}

/// Coordinate window [begin, end) on which agreement decides equality of two presentations.
inline std::pair<long, long> comparison_window(const EventuallyPeriodicPoint& a, const EventuallyPeriodicPoint& b) {
  long lo = std::min(a.left_boundary(), b.left_boundary());
  long hi = std::max(a.right_boundary(), b.right_boundary());
  long ll = std::lcm(static_cast<long>(a.left_cycle.size()), static_cast<long>(b.left_cycle.size()));
  long lr = std::lcm(static_cast<long>(a.right_cycle.size()), static_cast<long>(b.right_cycle.size()));
  return {lo - ll, hi + lr};
}

/// Shift action: point_shift(x, k)_n = x_{n+k}.
inline EventuallyPeriodicPoint point_shift(const EventuallyPeriodicPoint& x, long k) {
  EventuallyPeriodicPoint y = x;
  y.phase += k;
  return y;
}

/// Checks the cycles and seams against the transition matrix.
inline void validate_point(const Sft& x, const EventuallyPeriodicPoint& p) {
  auto in_range = [&](const Word& w) {
    for (Symbol s : w)
      if (s < 0 || static_cast<std::size_t>(s) >= x.size()) return false;
    return true;
  };
  if (p.left_cycle.empty() || p.right_cycle.empty()) fail(ErrorCode::InvalidPoint, "cycles must be nonempty");
  if (!in_range(p.left_cycle) || !in_range(p.center) || !in_range(p.right_cycle))
    fail(ErrorCode::InvalidPoint, "symbol outside the alphabet");
  auto cyclic = [&](const Word& w) { return x.admissible(w) && x.allows(w.back(), w.front()); };
  if (!cyclic(p.left_cycle)) fail(ErrorCode::InvalidPoint, "left cycle is not a cycle of the shift");
  if (!cyclic(p.right_cycle)) fail(ErrorCode::InvalidPoint, "right cycle is not a cycle of the shift");
  if (!x.admissible(p.center)) fail(ErrorCode::InvalidPoint, "center is not an admissible word");
  if (p.center.empty()) {
    if (!x.allows(p.left_cycle.back(), p.right_cycle.front())) fail(ErrorCode::InvalidPoint, "left/right seam not allowed");
  } else {
    if (!x.allows(p.left_cycle.back(), p.center.front())) fail(ErrorCode::InvalidPoint, "left seam not allowed");
    if (!x.allows(p.center.back(), p.right_cycle.front())) fail(ErrorCode::InvalidPoint, "right seam not allowed");
  }
}

inline bool is_point_of(const Sft& x, const EventuallyPeriodicPoint& p) {
  try {
    validate_point(x, p);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace sftlab
