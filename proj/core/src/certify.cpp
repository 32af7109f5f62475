#include "setbound/certify.hpp"

#include <stdexcept>
#include <string>

#include "setbound/detail/parallel.hpp"

namespace setbound {

namespace {

void require_certifiable(const Network& net) {
  if (!net.is_square()) {
    throw std::invalid_argument("certification needs a square network, got " + std::to_string(net.input_dim()) +
                                " -> " + std::to_string(net.output_dim()));
  }
  if (net.input_dim() > kMaxDetDim) {
    throw UnsupportedDimension("certification supports at most " + std::to_string(kMaxDetDim) +
                               " dimensions, got " + std::to_string(net.input_dim()));
  }
}

}  // namespace

bool certifiable(const Network& net) { return net.is_square() && net.input_dim() <= kMaxDetDim; }

IntervalMatrix jacobian_interval(const Network& net, const Box& cell) {
  require_certifiable(net);
  if (cell.dim() != net.input_dim()) {
    throw std::invalid_argument("jacobian_interval: cell dimension mismatch");
  }
  std::vector<Interval> x(cell.intervals().begin(), cell.intervals().end());
  IntervalMatrix jac = IntervalMatrix::identity(net.input_dim());
  std::vector<double> row;
  for (const Layer& layer : net.layers()) {
    std::vector<Interval> deriv(layer.out_dim());
    std::vector<Interval> next(layer.out_dim());
    row.resize(layer.in_dim());
    for (std::size_t i = 0; i < layer.out_dim(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      for (std::size_t k = 0; k < layer.in_dim(); ++k) row[k] = layer.weights(r, static_cast<Eigen::Index>(k));
      const Interval z = dot(row, x, layer.bias(r));
      deriv[i] = act_deriv_range(layer.activation, z);
      next[i] = act_range(layer.activation, z);
    }
    jac = interval_matmul(layer.weights, jac);
    scale_rows(jac, deriv);
    x = std::move(next);
  }
  return jac;
}

CertificationResult certify_homeomorphism(const Network& net, const Box& cell) {
  const Interval det = interval_det(jacobian_interval(net, cell));
  return {cell, det, !det.contains_zero()};
}

std::vector<CertificationResult> certify_grid(const Network& net, const CellGrid& grid, unsigned threads) {
  require_certifiable(net);
  std::vector<CertificationResult> results(grid.size());
  detail::parallel_for(
      grid.size(), [&](std::size_t i) { results[i] = certify_homeomorphism(net, grid.cell(i)); }, threads);
  return results;
}

SubsetExtraction extract_subset(const Network& net, const Box& input, std::vector<std::size_t> counts,
                                unsigned threads) {
  for (std::size_t k = 0; k < input.dim(); ++k) {
    if (input.is_degenerate(k)) {
      throw std::invalid_argument("extract_subset: input dimension " + std::to_string(k) + " is degenerate");
    }
  }
  SubsetExtraction out{CellGrid(input, std::move(counts)), {}, {}, {}, certifiable(net)};
  if (!out.certification_available) {
    out.kept.resize(out.grid.size());
    for (std::size_t i = 0; i < out.kept.size(); ++i) out.kept[i] = i;
    return out;
  }
  const std::vector<CertificationResult> results = certify_grid(net, out.grid, threads);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const bool interior = !out.grid.touches_boundary(out.grid.multi_index(i));
    if (results[i].certified) out.certified.push_back(i);
    if (results[i].certified && interior) {
      out.interior.push_back(i);
    } else {
      out.kept.push_back(i);
    }
  }
  return out;
}

}  // namespace setbound
