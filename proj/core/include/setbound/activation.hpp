#pragma once

#include <string>
#include <string_view>

#include "setbound/interval.hpp"

namespace setbound {

/// Differentiable activations supported by the verifier. All three are
/// monotone non-decreasing; tanh and sigmoid have even, unimodal derivatives
/// peaking at 0.
enum class Activation { tanh, sigmoid, linear };

/// Throws std::invalid_argument on an unknown name.
Activation parse_activation(std::string_view name);
std::string to_string(Activation act);

double activate(Activation act, double x);
double activate_deriv(Activation act, double x);

/// Encloses act([x.lo, x.hi]).
Interval act_range(Activation act, const Interval& x);
/// Encloses {act'(t) : t in x}.
Interval act_deriv_range(Activation act, const Interval& x);

}  // namespace setbound
