#include "setbound/topology.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace setbound {

namespace {

std::size_t checked_product(std::span<const std::size_t> counts) {
  std::size_t total = 1;
  for (std::size_t c : counts) {
    if (c != 0 && total > std::numeric_limits<std::size_t>::max() / c) {
      throw std::invalid_argument("grid has too many cells");
    }
    total *= c;
  }
  return total;
}

}  // namespace

CellGrid::CellGrid(Box base, std::vector<std::size_t> counts)
    : base_(std::move(base)), counts_(std::move(counts)) {
  if (counts_.size() != base_.dim()) {
    throw std::invalid_argument("partition: " + std::to_string(counts_.size()) + " counts for a " +
                                std::to_string(base_.dim()) + "-dimensional box");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] == 0) throw std::invalid_argument("partition: zero count in dimension " + std::to_string(k));
    if (base_.is_degenerate(k) && counts_[k] != 1) {
      throw std::invalid_argument("partition: degenerate dimension " + std::to_string(k) + " needs count 1");
    }
  }
  size_ = checked_product(counts_);
}

double CellGrid::edge(std::size_t k, std::size_t i) const {
  const Interval& d = base_[k];
  if (i == 0) return d.lo();
  if (i >= counts_[k]) return d.hi();
  const double v = d.lo() + d.width() * static_cast<double>(i) / static_cast<double>(counts_[k]);
  return std::min(std::max(v, d.lo()), d.hi());
}

std::vector<std::size_t> CellGrid::multi_index(std::size_t flat) const {
  if (flat >= size_) throw std::out_of_range("cell index out of range");
  std::vector<std::size_t> index(counts_.size());
  for (std::size_t k = counts_.size(); k-- > 0;) {
    index[k] = flat % counts_[k];
    flat /= counts_[k];
  }
  return index;
}

std::size_t CellGrid::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != counts_.size()) throw std::invalid_argument("cell index has wrong dimension");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (index[k] >= counts_[k]) throw std::out_of_range("cell index out of range");
    flat = flat * counts_[k] + index[k];
  }
  return flat;
}

Box CellGrid::cell(std::size_t flat) const { return cell(multi_index(flat)); }

Box CellGrid::cell(std::span<const std::size_t> index) const {
  if (index.size() != counts_.size()) throw std::invalid_argument("cell index has wrong dimension");
  std::vector<Interval> dims;
  dims.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= counts_[k]) throw std::out_of_range("cell index out of range");
    dims.emplace_back(edge(k, index[k]), edge(k, index[k] + 1));
  }
  return Box(std::move(dims));
}

bool CellGrid::touches_boundary(std::span<const std::size_t> index) const {
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (index[k] == 0 || index[k] + 1 >= counts_[k]) return true;
  }
  return false;
}

CellGrid partition(const Box& box, std::vector<std::size_t> counts) { return CellGrid(box, std::move(counts)); }

std::vector<Box> boundary_faces(const Box& box) {
  std::vector<Box> faces;
  faces.reserve(2 * box.dim());
  for (std::size_t k = 0; k < box.dim(); ++k) {
    if (box.is_degenerate(k)) {
      throw std::invalid_argument("boundary_faces: dimension " + std::to_string(k) + " is degenerate");
    }
  }
  for (std::size_t k = 0; k < box.dim(); ++k) {
    Box lo_face = box;
    Box hi_face = box;
    lo_face[k] = Interval::point(box[k].lo());
    hi_face[k] = Interval::point(box[k].hi());
    faces.push_back(std::move(lo_face));
    faces.push_back(std::move(hi_face));
  }
  return faces;
}

std::size_t boundary_cell_count(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    std::vector<std::size_t> face_counts(counts.begin(), counts.end());
    face_counts[k] = 1;
    total += 2 * checked_product(face_counts);
  }
  return total;
}

std::vector<IndexedCell> boundary_cells(const Box& box, std::span<const std::size_t> counts) {
  if (counts.size() != box.dim()) throw std::invalid_argument("boundary_cells: counts/dimension mismatch");
  const std::vector<Box> faces = boundary_faces(box);
  // Face cells are cut at the full grid's coordinates, so each one is a face
  // of a full-grid cell.
  const CellGrid full(box, std::vector<std::size_t>(counts.begin(), counts.end()));
  std::vector<IndexedCell> cells;
  cells.reserve(boundary_cell_count(counts));
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::size_t pinned = f / 2;
    const bool upper = (f % 2) == 1;
    std::vector<std::size_t> face_counts(counts.begin(), counts.end());
    face_counts[pinned] = 1;
    const CellGrid face_grid(faces[f], face_counts);
    for (std::size_t c = 0; c < face_grid.size(); ++c) {
      std::vector<std::size_t> index = face_grid.multi_index(c);
      std::vector<Interval> dims;
      dims.reserve(index.size());
      for (std::size_t k = 0; k < index.size(); ++k) {
        if (k == pinned) {
          dims.push_back(faces[f][k]);
        } else {
          dims.emplace_back(full.edge(k, index[k]), full.edge(k, index[k] + 1));
        }
      }
      index[pinned] = upper ? counts[pinned] : 0;
      cells.push_back({std::move(index), Box(std::move(dims))});
    }
  }
  return cells;
}

}  // namespace setbound
