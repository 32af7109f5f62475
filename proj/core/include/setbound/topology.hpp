#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "setbound/box.hpp"

namespace setbound {

/// A cell together with its integer grid coordinates.
struct IndexedCell {
  std::vector<std::size_t> index;
  Box cell;
};

/// Uniform tiling of a box into prod(counts) closed cells. Cell
/// (i_1, ..., i_n) spans [edge(k, i_k), edge(k, i_k + 1)] in dimension k;
/// neighbouring cells share their faces exactly. Flat indices are
/// row-major (last dimension varies fastest).
class CellGrid {
 public:
  /// Throws std::invalid_argument on a zero count, a count/dimension
  /// mismatch, or a count other than 1 on a degenerate dimension.
  CellGrid(Box base, std::vector<std::size_t> counts);

  const Box& base() const { return base_; }
  std::span<const std::size_t> counts() const { return counts_; }
  std::size_t dim() const { return counts_.size(); }
  std::size_t size() const { return size_; }

  /// Coordinate of the i-th cut in dimension k; edge(k, 0) == lo and
  /// edge(k, counts[k]) == hi exactly.
  double edge(std::size_t k, std::size_t i) const;

  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;

  Box cell(std::size_t flat) const;
  Box cell(std::span<const std::size_t> index) const;

  /// True iff some face of the cell lies on the boundary of base().
  bool touches_boundary(std::span<const std::size_t> index) const;

 private:
  Box base_;
  std::vector<std::size_t> counts_;
  std::size_t size_ = 0;
};

CellGrid partition(const Box& box, std::vector<std::size_t> counts);

/// The 2n faces of a box, ordered (dim 0 at lo, dim 0 at hi, dim 1 at lo,
/// ...). Throws std::invalid_argument if any dimension is degenerate.
std::vector<Box> boundary_faces(const Box& box);

/// Partitions every face of `box` with `counts` (the pinned dimension uses
/// a single cell). Cells are labelled with full-grid coordinates in which
/// the pinned dimension reads 0 on the lower face and counts[k] on the
/// upper face; cells on two lower faces can share a label, so the face is
/// given by position. Faces come in boundary_faces() order.
/// Total: sum_k 2 * prod_{j != k} counts[j].
std::vector<IndexedCell> boundary_cells(const Box& box, std::span<const std::size_t> counts);

/// Number of cells boundary_cells() returns.
std::size_t boundary_cell_count(std::span<const std::size_t> counts);

}  // namespace setbound
