#pragma once

#include <algorithm>

namespace fuzzcalc {

// Closed real interval [lo, hi]. Plain value; lo <= hi is maintained by the
// helpers below but not enforced on construction.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr double width() const noexcept { return hi - lo; }
  constexpr double midpoint() const noexcept { return 0.5 * (lo + hi); }
  constexpr bool contains(double x) const noexcept { return lo <= x && x <= hi; }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

inline Interval hull(double a, double b) noexcept { return {std::min(a, b), std::max(a, b)}; }

inline Interval operator+(Interval a, Interval b) noexcept { return {a.lo + b.lo, a.hi + b.hi}; }

inline Interval operator*(Interval a, Interval b) noexcept {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

inline Interval scale(double k, Interval a) noexcept { return hull(k * a.lo, k * a.hi); }

// Generalized Hukuhara difference of two intervals.
inline Interval gh_minus(Interval a, Interval b) noexcept { return hull(a.lo - b.lo, a.hi - b.hi); }

}  // namespace fuzzcalc
