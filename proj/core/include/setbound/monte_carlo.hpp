#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "setbound/box.hpp"
#include "setbound/network.hpp"

namespace setbound {

struct MonteCarloResult {
  Eigen::MatrixXd points;  // input_dim x n, one sample per column
  Eigen::MatrixXd images;  // output_dim x n
  Box image_hull;
  /// Sample indices whose image lies outside the safe box (ascending).
  std::vector<std::size_t> violations;
};

/// Samples `n` points uniformly from `region` (degenerate dimensions stay
/// pinned) with a counter-based generator: sample i is a pure function of
/// (seed, i), independent of thread count.
MonteCarloResult monte_carlo(const Network& net, const Box& region, std::size_t n, std::uint64_t seed,
                             const std::optional<Box>& safe = std::nullopt, unsigned threads = 0);

/// Coordinate k of sample i, as drawn by monte_carlo().
double monte_carlo_coordinate(const Box& region, std::uint64_t seed, std::size_t sample, std::size_t k);

}  // namespace setbound
