#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "setbound/activation.hpp"
#include "setbound/box.hpp"

namespace setbound {

/// The set {center + generators * e : e in [-1, 1]^g}. A zonotope with no
/// generators is a single point.
class Zonotope {
 public:
  Zonotope() = default;
  /// Throws std::invalid_argument if generators.rows() != center.size().
  Zonotope(Eigen::VectorXd center, Eigen::MatrixXd generators);

  std::size_t dim() const { return static_cast<std::size_t>(center_.size()); }
  std::size_t num_generators() const { return static_cast<std::size_t>(generators_.cols()); }

  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::MatrixXd& generators() const { return generators_; }

  /// Per-dimension radius sum_j |G_ij|, rounded up.
  Eigen::VectorXd radius() const;
  /// Outward-rounded interval hull [c_i - r_i, c_i + r_i].
  Box interval_hull() const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd generators_;
};

/// Center at the midpoints, one axis-aligned generator per non-degenerate
/// dimension. The result contains `cell`.
Zonotope zono_from_box(const Box& cell);

/// Affine image W z + b. Floating-point error in the product is bounded a
/// priori and absorbed into extra axis-aligned generators, so the result
/// contains the exact image.
Zonotope zono_affine(const Zonotope& z, const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias);

/// Parallelogram (slope/offset) transformer. For each dimension with
/// pre-activation hull [l, u] it uses slope min(act'(l), act'(u)) and adds
/// one fresh generator covering the approximation error. Linear activation
/// is the identity.
Zonotope zono_activation(const Zonotope& z, Activation act);

/// Merges generators that are nonzero in a single dimension into one
/// generator per dimension and drops zero generators. The represented set
/// is unchanged up to upward rounding of the merged magnitudes.
Zonotope compact_axis_generators(const Zonotope& z);

}  // namespace setbound
