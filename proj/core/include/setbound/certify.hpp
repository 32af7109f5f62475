#pragma once

#include <cstddef>
#include <vector>

#include "setbound/box.hpp"
#include "setbound/interval_matrix.hpp"
#include "setbound/network.hpp"
#include "setbound/topology.hpp"

namespace setbound {

/// Interval enclosure of {dN/dx (x) : x in cell}. Pre-activation boxes come
/// from a layer-wise interval forward pass; the Jacobian is accumulated as
/// diag(act'(z_l)) * W_l from the input side. Requires a square network of
/// dimension <= kMaxDetDim (throws std::invalid_argument / UnsupportedDimension).
IntervalMatrix jacobian_interval(const Network& net, const Box& cell);

struct CertificationResult {
  Box cell;
  Interval det_interval;
  /// 0 not in det_interval: the network restricted to the cell has a
  /// Jacobian determinant of constant nonzero sign.
  bool certified = false;
};

CertificationResult certify_homeomorphism(const Network& net, const Box& cell);

/// True iff the network can be fed to certify_homeomorphism at all.
bool certifiable(const Network& net);

/// Certifies every cell of a grid, in flat-index order.
std::vector<CertificationResult> certify_grid(const Network& net, const CellGrid& grid, unsigned threads = 0);

/// Split of a gridded input set into a removable interior part A (certified
/// cells with no face on the input boundary) and the kept cells, whose union
/// covers closure(input \ A).
struct SubsetExtraction {
  CellGrid grid;
  std::vector<std::size_t> certified;  // all certified cells, flat indices
  std::vector<std::size_t> interior;   // certified and away from the boundary (A)
  std::vector<std::size_t> kept;       // everything else
  /// False when the network is non-square or too wide to certify; every
  /// cell is then kept.
  bool certification_available = true;

  std::size_t total() const { return grid.size(); }
};

SubsetExtraction extract_subset(const Network& net, const Box& input, std::vector<std::size_t> counts,
                                unsigned threads = 0);

}  // namespace setbound
