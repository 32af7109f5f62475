#include "setbound/activation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace setbound {

namespace {

// libm tanh/exp/cosh are not correctly rounded; glibc documents errors of at
// most a couple of ulps, and the derived formulas add a few roundings more.
constexpr int kLibmUlps = 4;

struct Enclosure {
  double lo;
  double hi;
};

// Encloses a computed value by kLibmUlps on both sides, exact at 0 (every
// function here is exact there), clamped to the known range of the function.
Enclosure enclose(double x, double value, double range_lo, double range_hi) {
  if (x == 0.0) return {value, value};
  return {std::max(range_lo, rounding::nudge_down(value, kLibmUlps)),
          std::min(range_hi, rounding::nudge_up(value, kLibmUlps))};
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sigmoid_deriv(double x) {
  const double e = std::exp(-std::abs(x));
  const double d = 1.0 + e;
  return e / (d * d);
}

double tanh_deriv(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

Enclosure value_enclosure(Activation act, double x) {
  switch (act) {
    case Activation::tanh:
      return enclose(x, std::tanh(x), -1.0, 1.0);
    case Activation::sigmoid:
      return enclose(x, sigmoid(x), 0.0, 1.0);
    case Activation::linear:
      return {x, x};
  }
  throw std::invalid_argument("unknown activation");
}

Enclosure deriv_enclosure(Activation act, double x) {
  switch (act) {
    case Activation::tanh:
      return enclose(x, tanh_deriv(x), 0.0, 1.0);
    case Activation::sigmoid:
      return enclose(x, sigmoid_deriv(x), 0.0, 0.25);
    case Activation::linear:
      return {1.0, 1.0};
  }
  throw std::invalid_argument("unknown activation");
}

}  // namespace

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::tanh;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "linear" || name == "purelin") return Activation::linear;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

std::string to_string(Activation act) {
  switch (act) {
    case Activation::tanh:
      return "tanh";
    case Activation::sigmoid:
      return "sigmoid";
    case Activation::linear:
      return "linear";
  }
  throw std::invalid_argument("unknown activation");
}

double activate(Activation act, double x) {
  switch (act) {
    case Activation::tanh:
      return std::tanh(x);
    case Activation::sigmoid:
      return sigmoid(x);
    case Activation::linear:
      return x;
  }
  throw std::invalid_argument("unknown activation");
}

double activate_deriv(Activation act, double x) {
  switch (act) {
    case Activation::tanh:
      return tanh_deriv(x);
    case Activation::sigmoid:
      return sigmoid_deriv(x);
    case Activation::linear:
      return 1.0;
  }
  throw std::invalid_argument("unknown activation");
}

Interval act_range(Activation act, const Interval& x) {
  // Monotone increasing: the endpoints carry the range.
  const Enclosure lo = value_enclosure(act, x.lo());
  const Enclosure hi = value_enclosure(act, x.hi());
  return {lo.lo, hi.hi};
}

Interval act_deriv_range(Activation act, const Interval& x) {
  if (act == Activation::linear) return Interval::point(1.0);
  const Enclosure at_lo = deriv_enclosure(act, x.lo());
  const Enclosure at_hi = deriv_enclosure(act, x.hi());
  const double lo = std::min(at_lo.lo, at_hi.lo);
  if (x.contains_zero()) {
    return {lo, act == Activation::tanh ? 1.0 : 0.25};
  }
  return {lo, std::max(at_lo.hi, at_hi.hi)};
}

}  // namespace setbound
