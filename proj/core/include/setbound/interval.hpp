#pragma once

#include <iosfwd>
#include <span>

namespace setbound {

/// Closed real interval [lo, hi] with finite endpoints.
///
/// All arithmetic is outward rounded: the exact real result set is always
/// contained in the returned interval. For +, - and * the rounding is
/// exactness-aware (an error-free transformation decides whether the
/// round-to-nearest result needs a one-step nudge), so operations whose
/// result is exactly representable stay exact.
class Interval {
 public:
  constexpr Interval() = default;

  /// Throws std::domain_error if either endpoint is non-finite or lo > hi.
  Interval(double lo, double hi);

  static Interval point(double x) { return {x, x}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double width() const { return hi_ - lo_; }
  double mid() const;
  /// Upper bound on max(|x - mid()|) over the interval.
  double rad() const;
  /// Upper bound on max |x| over the interval.
  double mag() const;

  bool is_point() const { return lo_ == hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

Interval operator+(const Interval& a, double b);
Interval operator*(const Interval& a, double b);
Interval operator*(double a, const Interval& b);

Interval& operator+=(Interval& a, const Interval& b);

/// Scales every point of `a` by `s`.
inline Interval scale(const Interval& a, double s) { return a * s; }

Interval hull(const Interval& a, const Interval& b);
bool intersects(const Interval& a, const Interval& b);

/// Interval enclosure of sum_i a[i] * b[i].
Interval dot(std::span<const Interval> a, std::span<const Interval> b);
/// Interval enclosure of sum_i w[i] * x[i] + bias.
Interval dot(std::span<const double> w, std::span<const Interval> x, double bias);

std::ostream& operator<<(std::ostream& os, const Interval& x);

namespace rounding {

// Directed-rounding primitives. Each result is the nearest double on the
// requested side of the exact value (exact when representable).
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);

/// Moves `x` outward by `steps` representable doubles.
double nudge_down(double x, int steps = 1);
double nudge_up(double x, int steps = 1);

}  // namespace rounding

}  // namespace setbound
