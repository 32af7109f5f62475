#include "setbound/propagate.hpp"

#include <stdexcept>
#include <vector>

namespace setbound {

Domain parse_domain(std::string_view name) {
  if (name == "box" || name == "interval") return Domain::box;
  if (name == "zono" || name == "zonotope") return Domain::zonotope;
  throw std::invalid_argument("unknown domain '" + std::string(name) + "'");
}

std::string to_string(Domain domain) { return domain == Domain::box ? "box" : "zono"; }

Box ReachSet::hull() const {
  if (const auto* box = std::get_if<Box>(&payload)) return *box;
  return std::get<Zonotope>(payload).interval_hull();
}

Box box_propagate(const Network& net, const Box& cell) {
  if (cell.dim() != net.input_dim()) {
    throw std::invalid_argument("box_propagate: cell dimension " + std::to_string(cell.dim()) +
                                " does not match network input " + std::to_string(net.input_dim()));
  }
  std::vector<Interval> x(cell.intervals().begin(), cell.intervals().end());
  std::vector<double> row;
  for (const Layer& layer : net.layers()) {
    std::vector<Interval> y(layer.out_dim());
    row.resize(layer.in_dim());
    for (std::size_t i = 0; i < layer.out_dim(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      for (std::size_t k = 0; k < layer.in_dim(); ++k) row[k] = layer.weights(r, static_cast<Eigen::Index>(k));
      y[i] = act_range(layer.activation, dot(row, x, layer.bias(r)));
    }
    x = std::move(y);
  }
  return Box(std::move(x));
}

ReachSet propagate(const Network& net, const Box& cell, Domain domain) {
  if (domain == Domain::box) return {domain, box_propagate(net, cell), cell};
  if (cell.dim() != net.input_dim()) {
    throw std::invalid_argument("propagate: cell dimension " + std::to_string(cell.dim()) +
                                " does not match network input " + std::to_string(net.input_dim()));
  }
  Zonotope z = zono_from_box(cell);
  for (const Layer& layer : net.layers()) {
    z = zono_activation(zono_affine(z, layer.weights, layer.bias), layer.activation);
  }
  return {domain, std::move(z), cell};
}

}  // namespace setbound
