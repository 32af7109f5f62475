#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "setbound/box.hpp"
#include "setbound/network.hpp"
#include "setbound/zonotope.hpp"

namespace setbound {

enum class Domain { box, zonotope };

/// Accepts "box", "zono" and "zonotope".
Domain parse_domain(std::string_view name);
std::string to_string(Domain domain);

/// Over-approximation of the image of `source_cell` under a network.
struct ReachSet {
  Domain domain = Domain::box;
  std::variant<Box, Zonotope> payload;
  Box source_cell;

  /// Interval hull of the payload.
  Box hull() const;
};

/// Layer-wise interval propagation: interval mat-vec, then act_range.
Box box_propagate(const Network& net, const Box& cell);

/// Sound over-approximation of {N(x) : x in cell} in the chosen domain.
ReachSet propagate(const Network& net, const Box& cell, Domain domain);

}  // namespace setbound
