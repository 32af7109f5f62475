#include "setbound/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace setbound {

namespace rounding {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude the fma residual of a product may itself be rounded,
// so exactness can no longer be decided.
constexpr double kProductUnderflow = 0x1p-960;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::domain_error(std::string("interval arithmetic overflow in ") + what);
  }
}

// Knuth TwoSum: s + err == a + b exactly (barring overflow).
double two_sum_err(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

}  // namespace

double nudge_down(double x, int steps) {
  for (int i = 0; i < steps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double nudge_up(double x, int steps) {
  for (int i = 0; i < steps; ++i) x = std::nextafter(x, kInf);
  return x;
}

double add_down(double a, double b) {
  const double s = a + b;
  require_finite(s, "add");
  return two_sum_err(a, b, s) < 0.0 ? nudge_down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  require_finite(s, "add");
  return two_sum_err(a, b, s) > 0.0 ? nudge_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  const double p = a * b;
  require_finite(p, "mul");
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::abs(p) < kProductUnderflow) return nudge_down(p);
  return std::fma(a, b, -p) < 0.0 ? nudge_down(p) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  require_finite(p, "mul");
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::abs(p) < kProductUnderflow) return nudge_up(p);
  return std::fma(a, b, -p) > 0.0 ? nudge_up(p) : p;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::domain_error("interval endpoints must be finite");
  }
  if (lo > hi) {
    throw std::domain_error("interval lower endpoint exceeds upper endpoint");
  }
  // Normalise -0.0 so that equality and printing behave.
  if (lo_ == 0.0) lo_ = 0.0;
  if (hi_ == 0.0) hi_ = 0.0;
}

double Interval::mid() const {
  if (is_point()) return lo_;
  const double m = lo_ + 0.5 * (hi_ - lo_);
  return std::clamp(m, lo_, hi_);
}

double Interval::rad() const {
  const double m = mid();
  return std::max(sub_up(hi_, m), sub_up(m, lo_));
}

double Interval::mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

Interval operator+(const Interval& a, const Interval& b) {
  return {add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi())};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo())};
}

Interval operator-(const Interval& a) { return {-a.hi(), -a.lo()}; }

Interval operator*(const Interval& a, const Interval& b) {
  const double c[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
  double lo = mul_down(c[0][0], c[0][1]);
  double hi = mul_up(c[0][0], c[0][1]);
  for (int i = 1; i < 4; ++i) {
    lo = std::min(lo, mul_down(c[i][0], c[i][1]));
    hi = std::max(hi, mul_up(c[i][0], c[i][1]));
  }
  return {lo, hi};
}

Interval operator+(const Interval& a, double b) { return a + Interval::point(b); }

Interval operator*(const Interval& a, double b) {
  if (!std::isfinite(b)) throw std::domain_error("non-finite scale factor");
  if (b >= 0.0) return {mul_down(a.lo(), b), mul_up(a.hi(), b)};
  return {mul_down(a.hi(), b), mul_up(a.lo(), b)};
}

Interval operator*(double a, const Interval& b) { return b * a; }

Interval& operator+=(Interval& a, const Interval& b) {
  a = a + b;
  return a;
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

bool intersects(const Interval& a, const Interval& b) {
  return a.lo() <= b.hi() && b.lo() <= a.hi();
}

Interval dot(std::span<const Interval> a, std::span<const Interval> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Interval acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Interval dot(std::span<const double> w, std::span<const Interval> x, double bias) {
  if (w.size() != x.size()) throw std::invalid_argument("dot: length mismatch");
  double lo = bias;
  double hi = bias;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Interval term = x[i] * w[i];
    lo = add_down(lo, term.lo());
    hi = add_up(hi, term.hi());
  }
  return {lo, hi};
}

std::ostream& operator<<(std::ostream& os, const Interval& x) {
  return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace setbound
