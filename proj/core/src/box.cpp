#include "setbound/box.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace setbound {

namespace {

void require_same_dim(const Box& a, const Box& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": box dimension mismatch");
  }
}

}  // namespace

Box::Box(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("box must have at least one dimension");
}

Box::Box(std::initializer_list<Interval> dims) : Box(std::vector<Interval>(dims)) {}

Box Box::point(std::span<const double> x) {
  std::vector<Interval> dims;
  dims.reserve(x.size());
  for (double v : x) dims.push_back(Interval::point(v));
  return Box(std::move(dims));
}

Box Box::cube(std::size_t n, double lo, double hi) {
  return Box(std::vector<Interval>(n, Interval(lo, hi)));
}

std::vector<double> Box::lower() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.lo());
  return out;
}

std::vector<double> Box::upper() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.hi());
  return out;
}

std::vector<double> Box::center() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.mid());
  return out;
}

std::vector<double> Box::widths() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) out.push_back(d.width());
  return out;
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dims_.size()) throw std::invalid_argument("point/box dimension mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!dims_[k].contains(x[k])) return false;
  }
  return true;
}

Box hull(const Box& a, const Box& b) {
  require_same_dim(a, b, "hull");
  std::vector<Interval> dims;
  dims.reserve(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) dims.push_back(hull(a[k], b[k]));
  return Box(std::move(dims));
}

bool contains(const Box& outer, const Box& inner) {
  require_same_dim(outer, inner, "contains");
  for (std::size_t k = 0; k < outer.dim(); ++k) {
    if (!outer[k].contains(inner[k])) return false;
  }
  return true;
}

bool intersects(const Box& a, const Box& b) {
  require_same_dim(a, b, "intersects");
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (!intersects(a[k], b[k])) return false;
  }
  return true;
}

std::pair<Box, Box> split(const Box& b) {
  std::size_t widest = 0;
  for (std::size_t k = 1; k < b.dim(); ++k) {
    if (b[k].width() > b[widest].width()) widest = k;
  }
  const double m = b[widest].mid();
  Box left = b;
  Box right = b;
  left[widest] = Interval(b[widest].lo(), m);
  right[widest] = Interval(m, b[widest].hi());
  return {std::move(left), std::move(right)};
}

Box inflate(const Box& b, double slack) {
  std::vector<Interval> dims;
  dims.reserve(b.dim());
  for (const auto& d : b.intervals()) {
    dims.emplace_back(rounding::sub_down(d.lo(), slack), rounding::add_up(d.hi(), slack));
  }
  return Box(std::move(dims));
}

std::ostream& operator<<(std::ostream& os, const Box& b) {
  for (std::size_t k = 0; k < b.dim(); ++k) {
    if (k) os << " x ";
    os << b[k];
  }
  return os;
}

}  // namespace setbound
