#include "setbound/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace setbound {

namespace {

constexpr double kUnitRoundoff = 0x1p-53;
constexpr double kTiny = std::numeric_limits<double>::denorm_min();

using rounding::add_up;
using rounding::mul_up;

// Upward-rounded sum of |v_j|.
double abs_sum_up(const Eigen::Ref<const Eigen::RowVectorXd>& v) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) acc = add_up(acc, std::abs(v(j)));
  return acc;
}

}  // namespace

Zonotope::Zonotope(Eigen::VectorXd center, Eigen::MatrixXd generators)
    : center_(std::move(center)), generators_(std::move(generators)) {
  if (generators_.cols() == 0) generators_.resize(center_.size(), 0);
  if (generators_.rows() != center_.size()) {
    throw std::invalid_argument("zonotope: generator rows (" + std::to_string(generators_.rows()) +
                                ") must equal center dimension (" + std::to_string(center_.size()) + ")");
  }
  if (!center_.allFinite() || !generators_.allFinite()) {
    throw std::domain_error("zonotope: non-finite center or generator");
  }
}

Eigen::VectorXd Zonotope::radius() const {
  Eigen::VectorXd r(center_.size());
  for (Eigen::Index i = 0; i < center_.size(); ++i) r(i) = abs_sum_up(generators_.row(i));
  return r;
}

Box Zonotope::interval_hull() const {
  const Eigen::VectorXd r = radius();
  std::vector<Interval> dims;
  dims.reserve(dim());
  for (Eigen::Index i = 0; i < center_.size(); ++i) {
    dims.emplace_back(rounding::sub_down(center_(i), r(i)), add_up(center_(i), r(i)));
  }
  return Box(std::move(dims));
}

Zonotope zono_from_box(const Box& cell) {
  const auto n = static_cast<Eigen::Index>(cell.dim());
  Eigen::VectorXd center(n);
  std::vector<std::pair<Eigen::Index, double>> gens;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Interval& d = cell[static_cast<std::size_t>(i)];
    center(i) = d.mid();
    if (!d.is_point()) gens.emplace_back(i, d.rad());
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) g(gens[j].first, static_cast<Eigen::Index>(j)) = gens[j].second;
  return {std::move(center), std::move(g)};
}

Zonotope zono_affine(const Zonotope& z, const Eigen::MatrixXd& weights, const Eigen::VectorXd& bias) {
  if (static_cast<std::size_t>(weights.cols()) != z.dim()) {
    throw std::invalid_argument("zono_affine: weight columns (" + std::to_string(weights.cols()) +
                                ") do not match zonotope dimension (" + std::to_string(z.dim()) + ")");
  }
  if (bias.size() != weights.rows()) throw std::invalid_argument("zono_affine: bias length mismatch");

  const Eigen::Index out = weights.rows();
  const Eigen::Index n = weights.cols();
  const Eigen::Index g = z.generators().cols();

  // Center through interval arithmetic; its radius is rounding error.
  Eigen::VectorXd center(out);
  Eigen::VectorXd err(out);
  std::vector<Interval> c_point(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) c_point[static_cast<std::size_t>(k)] = Interval::point(z.center()(k));
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < out; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = weights(i, k);
    const Interval ci = dot(row, c_point, bias(i));
    center(i) = ci.mid();
    err(i) = ci.rad();
  }

  Eigen::MatrixXd gens = weights * z.generators();

  // |fl(W G) - W G| <= gamma_n |W| |G| entrywise, for any summation order.
  if (g > 0) {
    Eigen::VectorXd g_abs_rows(n);
    for (Eigen::Index k = 0; k < n; ++k) g_abs_rows(k) = abs_sum_up(z.generators().row(k));
    const Eigen::VectorXd bound = weights.cwiseAbs() * g_abs_rows;
    const double gamma = 2.0 * static_cast<double>(n + 1) * kUnitRoundoff;
    const double underflow = static_cast<double>((n + 1) * g) * kTiny;
    for (Eigen::Index i = 0; i < out; ++i) {
      err(i) = add_up(err(i), add_up(mul_up(gamma, bound(i)), underflow));
    }
  }

  std::vector<Eigen::Index> err_dims;
  for (Eigen::Index i = 0; i < out; ++i) {
    if (err(i) > 0.0) err_dims.push_back(i);
  }
  Eigen::MatrixXd all(out, g + static_cast<Eigen::Index>(err_dims.size()));
  all.leftCols(g) = gens;
  all.rightCols(static_cast<Eigen::Index>(err_dims.size())).setZero();
  for (std::size_t j = 0; j < err_dims.size(); ++j) {
    all(err_dims[j], g + static_cast<Eigen::Index>(j)) = err(err_dims[j]);
  }
  return {std::move(center), std::move(all)};
}

Zonotope zono_activation(const Zonotope& z, Activation act) {
  if (act == Activation::linear) return z;

  const Box pre = z.interval_hull();
  const auto d = static_cast<Eigen::Index>(z.dim());
  const Eigen::Index g = z.generators().cols();

  Eigen::VectorXd center(d);
  Eigen::MatrixXd gens(d, g);
  Eigen::VectorXd fresh(d);

  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = pre[static_cast<std::size_t>(i)].lo();
    const double u = pre[static_cast<std::size_t>(i)].hi();

    // Guaranteed lower bound on act' over [l, u] (unimodal derivative: the
    // minimum sits at an endpoint), so t -> act(t) - slope * t is
    // non-decreasing and its range is carried by the endpoints.
    const double slope = std::max(0.0, std::min(act_deriv_range(act, Interval::point(l)).lo(),
                                                act_deriv_range(act, Interval::point(u)).lo()));
    const Interval at_l = act_range(act, Interval::point(l)) + Interval::point(l) * (-slope);
    const Interval at_u = act_range(act, Interval::point(u)) + Interval::point(u) * (-slope);
    const Interval offset(at_l.lo(), std::max(at_l.lo(), at_u.hi()));

    const double mu1 = offset.mid();
    double mu2 = offset.rad();

    const double c = z.center()(i);
    center(i) = slope * c + mu1;
    gens.row(i) = slope * z.generators().row(i);

    // Rounding error of the scaled center and generators.
    double rounding_err = mul_up(kUnitRoundoff, add_up(std::abs(slope * c), std::abs(center(i))));
    rounding_err = add_up(rounding_err, mul_up(kUnitRoundoff, mul_up(slope, abs_sum_up(z.generators().row(i)))));
    rounding_err = add_up(rounding_err, static_cast<double>(g + 2) * kTiny);
    mu2 = add_up(mu2, mul_up(2.0, rounding_err));
    fresh(i) = std::max(0.0, mu2);
  }

  Eigen::MatrixXd all(d, g + d);
  all.leftCols(g) = gens;
  all.rightCols(d) = fresh.asDiagonal();
  return compact_axis_generators(Zonotope(std::move(center), std::move(all)));
}

Zonotope compact_axis_generators(const Zonotope& z) {
  const auto d = static_cast<Eigen::Index>(z.dim());
  const Eigen::MatrixXd& g = z.generators();
  std::vector<Eigen::Index> dense;
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(d);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    Eigen::Index nonzero = 0;
    Eigen::Index where = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (g(i, j) != 0.0) {
        ++nonzero;
        where = i;
      }
    }
    if (nonzero == 0) continue;
    if (nonzero == 1) {
      axis(where) = add_up(axis(where), std::abs(g(where, j)));
    } else {
      dense.push_back(j);
    }
  }
  std::vector<Eigen::Index> axis_dims;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (axis(i) > 0.0) axis_dims.push_back(i);
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(dense.size() + axis_dims.size()));
  for (std::size_t k = 0; k < dense.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = g.col(dense[k]);
  for (std::size_t k = 0; k < axis_dims.size(); ++k) {
    out(axis_dims[k], static_cast<Eigen::Index>(dense.size() + k)) = axis(axis_dims[k]);
  }
  return {z.center(), std::move(out)};
}

}  // namespace setbound
