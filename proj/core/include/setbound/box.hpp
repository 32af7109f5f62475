#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "setbound/interval.hpp"

namespace setbound {

/// Axis-aligned product of closed intervals. Degenerate dimensions
/// (lo == hi) are allowed and describe faces of higher-dimensional boxes.
class Box {
 public:
  Box() = default;
  /// Throws std::invalid_argument if `dims` is empty.
  explicit Box(std::vector<Interval> dims);
  Box(std::initializer_list<Interval> dims);

  /// Degenerate box at a single point.
  static Box point(std::span<const double> x);
  /// [lo, hi]^n
  static Box cube(std::size_t n, double lo, double hi);

  std::size_t dim() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }

  const Interval& operator[](std::size_t k) const { return dims_[k]; }
  Interval& operator[](std::size_t k) { return dims_[k]; }

  std::span<const Interval> intervals() const { return dims_; }

  std::vector<double> lower() const;
  std::vector<double> upper() const;
  std::vector<double> center() const;
  std::vector<double> widths() const;

  bool is_degenerate(std::size_t k) const { return dims_[k].is_point(); }
  /// True iff `x` lies in the closed box.
  bool contains(std::span<const double> x) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> dims_;
};

/// Componentwise interval hull.
Box hull(const Box& a, const Box& b);
/// True iff `inner` is a subset of `outer`.
bool contains(const Box& outer, const Box& inner);
/// Closed-set intersection test; boxes sharing only a face or corner intersect.
bool intersects(const Box& a, const Box& b);
/// Bisects the widest dimension (lowest index on ties). Both halves share the
/// split face.
std::pair<Box, Box> split(const Box& b);
/// Widens every endpoint by `slack` (absolute).
Box inflate(const Box& b, double slack);

std::ostream& operator<<(std::ostream& os, const Box& b);

}  // namespace setbound
