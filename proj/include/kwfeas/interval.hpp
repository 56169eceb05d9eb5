#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kwfeas {

// Closed interval of doubles. Every arithmetic result is widened by one ulp
// on each side, so the true real-number result is always enclosed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h)) throw std::domain_error("interval with NaN endpoint");
    if (l > h) throw std::domain_error("interval with lo > hi");
  }

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double mid() const { return lo + 0.5 * (hi - lo); }
  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
};

namespace detail {
inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
}  // namespace detail

inline Interval operator+(Interval a, Interval b) {
  return {detail::down(a.lo + b.lo), detail::up(a.hi + b.hi)};
}

inline Interval operator-(Interval a, Interval b) {
  return {detail::down(a.lo - b.hi), detail::up(a.hi - b.lo)};
}

inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

inline Interval operator*(Interval a, Interval b) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  const double l = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
  const double u = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
  return {detail::down(l), detail::up(u)};
}

// x^n for n >= 0, tight up to rounding for the even/odd cases.
inline Interval pow(Interval a, int n) {
  if (n < 0) throw std::domain_error("negative interval power");
  if (n == 0) return Interval(1.0);
  Interval r = a;
  for (int i = 1; i < n; ++i) r = r * a;
  if (n % 2 == 0 && a.lo < 0.0 && a.hi > 0.0) r.lo = 0.0;
  return r;
}

inline Interval hull(Interval a, Interval b) { return {std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi)}; }

}  // namespace kwfeas
