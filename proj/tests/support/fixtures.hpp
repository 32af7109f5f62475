#pragma once

// Shared test networks and independent oracles. Nothing here calls into the
// library's evaluation, rounding or propagation paths.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "setbound/box.hpp"
#include "setbound/interval_matrix.hpp"
#include "setbound/network.hpp"

namespace setbound::testing {

inline Network linear_network(const Eigen::MatrixXd& w, const Eigen::VectorXd& b) {
  return Network({Layer{w, b, Activation::linear}});
}

inline Network identity_network(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return linear_network(Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d));
}

inline Network single_tanh_network(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  return Network({Layer{Eigen::MatrixXd::Identity(d, d), Eigen::VectorXd::Zero(d), Activation::tanh}});
}

inline Network singular_network() {
  Eigen::MatrixXd w(2, 2);
  w << 1, 1, 1, 1;
  return linear_network(w, Eigen::VectorXd::Zero(2));
}

/// 2 -> 5 -> 2 tanh/linear network whose Jacobian determinant is certified
/// nonzero over all of [0,1]^2 by a single interval evaluation.
inline Network invertible_net() {
  const std::size_t dims[] = {2, 5, 2};
  return generate_network(7, dims, Activation::tanh, 1.0);
}

/// 2 -> 7 -> 2 tanh/linear network whose Jacobian determinant changes sign
/// inside [-1,1]^2 (the non-invertible case).
inline Network folding_net() {
  const std::size_t dims[] = {2, 7, 2};
  return generate_network(3, dims, Activation::tanh, 1.0);
}

inline double ref_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Straightforward re-implementation of the forward pass.
inline std::vector<double> reference_forward(const Network& net, std::vector<double> x) {
  for (const Layer& layer : net.layers()) {
    std::vector<double> y(layer.out_dim());
    for (std::size_t i = 0; i < y.size(); ++i) {
      double acc = layer.bias(static_cast<Eigen::Index>(i));
      for (std::size_t k = 0; k < x.size(); ++k) {
        acc += layer.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * x[k];
      }
      switch (layer.activation) {
        case Activation::tanh:
          y[i] = std::tanh(acc);
          break;
        case Activation::sigmoid:
          y[i] = ref_sigmoid(acc);
          break;
        case Activation::linear:
          y[i] = acc;
          break;
      }
    }
    x = std::move(y);
  }
  return x;
}

/// Central finite differences of reference_forward.
inline Eigen::MatrixXd fd_jacobian(const Network& net, const std::vector<double>& x, double h = 1e-5) {
  Eigen::MatrixXd j(static_cast<Eigen::Index>(net.output_dim()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::vector<double> xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const auto fp = reference_forward(net, xp);
    const auto fm = reference_forward(net, xm);
    for (std::size_t i = 0; i < fp.size(); ++i) {
      j(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (fp[i] - fm[i]) / (2.0 * h);
    }
  }
  return j;
}

using quad = __float128;

/// Determinant by Laplace expansion in quad precision.
inline quad quad_det(const std::vector<std::vector<quad>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  quad acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<quad>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) minor[r - 1].push_back(m[r][c]);
      }
    }
    const quad term = m[0][j] * quad_det(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

inline quad quad_det(const Eigen::MatrixXd& m) {
  std::vector<std::vector<quad>> q(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) q[static_cast<std::size_t>(r)].push_back(m(r, c));
  }
  return quad_det(q);
}

/// [min, max] of the determinant over all 2^(n*n) endpoint matrices.
inline std::pair<quad, quad> vertex_det_hull(const IntervalMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t entries = n * n;
  quad lo = 0, hi = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << entries); ++mask) {
    std::vector<std::vector<quad>> v(n, std::vector<quad>(n));
    for (std::size_t e = 0; e < entries; ++e) {
      const Interval& x = m(e / n, e % n);
      v[e / n][e % n] = ((mask >> e) & 1) ? x.hi() : x.lo();
    }
    const quad d = quad_det(v);
    if (mask == 0 || d < lo) lo = d;
    if (mask == 0 || d > hi) hi = d;
  }
  return {lo, hi};
}

/// Uniform samples from a box using the standard library generator
/// (independent of the library's counter-based sampler).
inline std::vector<std::vector<double>> sample_box(const Box& box, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out(n, std::vector<double>(box.dim()));
  for (auto& p : out) {
    for (std::size_t k = 0; k < box.dim(); ++k) {
      std::uniform_real_distribution<double> u(box[k].lo(), box[k].hi());
      p[k] = box[k].is_point() ? box[k].lo() : std::min(u(rng), box[k].hi());
    }
  }
  return out;
}

/// Hull of reference_forward over samples, inflated by `ratio` of its width
/// per dimension (at least `floor`).
inline Box mc_safe_box(const Network& net, const Box& input, double ratio, std::size_t n = 20000,
                       std::uint64_t seed = 99, double floor = 1e-6) {
  std::vector<double> lo(net.output_dim(), INFINITY), hi(net.output_dim(), -INFINITY);
  for (const auto& x : sample_box(input, n, seed)) {
    const auto y = reference_forward(net, x);
    for (std::size_t k = 0; k < y.size(); ++k) {
      lo[k] = std::min(lo[k], y[k]);
      hi[k] = std::max(hi[k], y[k]);
    }
  }
  std::vector<Interval> dims;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    const double pad = std::max(floor, ratio * (hi[k] - lo[k]));
    dims.emplace_back(lo[k] - pad, hi[k] + pad);
  }
  return Box(std::move(dims));
}

/// a is inside b widened by `slack` per endpoint.
inline bool within(const Box& a, const Box& b, double slack) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (a[k].lo() < b[k].lo() - slack || a[k].hi() > b[k].hi() + slack) return false;
  }
  return true;
}

}  // namespace setbound::testing
