#include "setbound/interval_matrix.hpp"

#include <array>
#include <string>

namespace setbound {

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("interval matrix: entry count does not match shape");
  }
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval::point(1.0);
  return m;
}

IntervalMatrix IntervalMatrix::from_point(const Eigen::MatrixXd& m) {
  IntervalMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(r, c) = Interval::point(m(r, c));
    }
  }
  return out;
}

bool IntervalMatrix::contains(const Eigen::MatrixXd& m) const {
  if (static_cast<std::size_t>(m.rows()) != rows_ || static_cast<std::size_t>(m.cols()) != cols_) {
    throw std::invalid_argument("interval matrix: shape mismatch in contains");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (!(*this)(r, c).contains(m(r, c))) return false;
    }
  }
  return true;
}

IntervalMatrix interval_matmul(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("interval_matmul: inner dimensions differ (" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
  }
  IntervalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Interval acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

IntervalMatrix interval_matmul(const Eigen::MatrixXd& a, const IntervalMatrix& b) {
  if (static_cast<std::size_t>(a.cols()) != b.rows()) {
    throw std::invalid_argument("interval_matmul: inner dimensions differ (" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
  }
  IntervalMatrix out(static_cast<std::size_t>(a.rows()), b.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double lo = 0.0;
      double hi = 0.0;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        const double w = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        if (w == 0.0) continue;
        const Interval t = b(k, j) * w;
        lo = rounding::add_down(lo, t.lo());
        hi = rounding::add_up(hi, t.hi());
      }
      out(i, j) = Interval(lo, hi);
    }
  }
  return out;
}

void scale_rows(IntervalMatrix& m, const std::vector<Interval>& d) {
  if (d.size() != m.rows()) throw std::invalid_argument("scale_rows: length mismatch");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = d[r] * m(r, c);
  }
}

namespace {

// Laplace expansion along the first active row. `cols` lists the columns
// still in play; `row` is the first row not yet expanded.
Interval cofactor_det(const IntervalMatrix& m, std::size_t row, std::array<std::size_t, kMaxDetDim>& cols,
                      std::size_t ncols) {
  if (ncols == 1) return m(row, cols[0]);
  if (ncols == 2) {
    return m(row, cols[0]) * m(row + 1, cols[1]) - m(row, cols[1]) * m(row + 1, cols[0]);
  }
  Interval acc;
  std::array<std::size_t, kMaxDetDim> minor{};
  for (std::size_t j = 0; j < ncols; ++j) {
    const Interval& pivot = m(row, cols[j]);
    if (pivot.is_point() && pivot.lo() == 0.0) continue;
    std::size_t w = 0;
    for (std::size_t t = 0; t < ncols; ++t) {
      if (t != j) minor[w++] = cols[t];
    }
    const Interval term = pivot * cofactor_det(m, row + 1, minor, ncols - 1);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

Interval interval_det(const IntervalMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("interval_det: matrix must be square and non-empty");
  }
  if (m.rows() > kMaxDetDim) {
    throw UnsupportedDimension("interval_det: dimension " + std::to_string(m.rows()) +
                               " exceeds supported maximum " + std::to_string(kMaxDetDim));
  }
  std::array<std::size_t, kMaxDetDim> cols{};
  for (std::size_t j = 0; j < m.cols(); ++j) cols[j] = j;
  return cofactor_det(m, 0, cols, m.cols());
}

}  // namespace setbound
