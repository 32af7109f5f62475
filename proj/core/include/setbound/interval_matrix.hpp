#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "setbound/interval.hpp"

namespace setbound {

/// Largest dimension accepted by interval_det (cofactor expansion).
inline constexpr std::size_t kMaxDetDim = 6;

/// Thrown when an operation is asked for a dimension it deliberately does
/// not support.
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix of intervals.
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  /// rows x cols matrix of point zeros.
  IntervalMatrix(std::size_t rows, std::size_t cols);
  IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> entries);

  static IntervalMatrix identity(std::size_t n);
  /// Lifts a real matrix to point intervals.
  static IntervalMatrix from_point(const Eigen::MatrixXd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Interval& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Interval& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  /// True iff the real matrix `m` lies entrywise inside this matrix.
  bool contains(const Eigen::MatrixXd& m) const;

  friend bool operator==(const IntervalMatrix&, const IntervalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> entries_;
};

/// Entrywise enclosure of the product; throws std::invalid_argument on
/// a.cols() != b.rows().
IntervalMatrix interval_matmul(const IntervalMatrix& a, const IntervalMatrix& b);
/// Point-matrix times interval-matrix.
IntervalMatrix interval_matmul(const Eigen::MatrixXd& a, const IntervalMatrix& b);

/// Multiplies row r of `m` by d[r] in place.
void scale_rows(IntervalMatrix& m, const std::vector<Interval>& d);

/// Encloses det(M~) over every real M~ inside `m`, by cofactor expansion.
/// Throws std::invalid_argument if `m` is not square or empty, and
/// UnsupportedDimension above kMaxDetDim.
Interval interval_det(const IntervalMatrix& m);

}  // namespace setbound
