#include "setbound/monte_carlo.hpp"

#include <algorithm>
#include <stdexcept>

#include "setbound/detail/parallel.hpp"
#include "setbound/random.hpp"

namespace setbound {

double monte_carlo_coordinate(const Box& region, std::uint64_t seed, std::size_t sample, std::size_t k) {
  return counter_uniform(seed, k + 1, sample, region[k].lo(), region[k].hi());
}

MonteCarloResult monte_carlo(const Network& net, const Box& region, std::size_t n, std::uint64_t seed,
                             const std::optional<Box>& safe, unsigned threads) {
  if (n == 0) throw std::invalid_argument("monte_carlo: need at least one sample");
  if (region.dim() != net.input_dim()) throw std::invalid_argument("monte_carlo: region dimension mismatch");
  if (safe && safe->dim() != net.output_dim()) throw std::invalid_argument("monte_carlo: safe set dimension mismatch");

  const auto in = static_cast<Eigen::Index>(net.input_dim());
  const auto out = static_cast<Eigen::Index>(net.output_dim());
  MonteCarloResult result;
  result.points.resize(in, static_cast<Eigen::Index>(n));
  result.images.resize(out, static_cast<Eigen::Index>(n));
  std::vector<char> outside(n, 0);

  detail::parallel_for(
      n,
      [&](std::size_t i) {
        const auto col = static_cast<Eigen::Index>(i);
        Eigen::VectorXd x(in);
        for (Eigen::Index k = 0; k < in; ++k) {
          x(k) = monte_carlo_coordinate(region, seed, i, static_cast<std::size_t>(k));
        }
        const Eigen::VectorXd y = forward_point(net, x);
        result.points.col(col) = x;
        result.images.col(col) = y;
        if (safe) outside[i] = !safe->contains(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
      },
      threads);

  std::vector<Interval> hull;
  hull.reserve(static_cast<std::size_t>(out));
  for (Eigen::Index k = 0; k < out; ++k) {
    hull.emplace_back(result.images.row(k).minCoeff(), result.images.row(k).maxCoeff());
  }
  result.image_hull = Box(std::move(hull));
  for (std::size_t i = 0; i < n; ++i) {
    if (outside[i]) result.violations.push_back(i);
  }
  return result;
}

}  // namespace setbound
