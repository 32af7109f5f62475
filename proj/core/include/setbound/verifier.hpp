#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setbound/box.hpp"
#include "setbound/network.hpp"
#include "setbound/propagate.hpp"

namespace setbound {

enum class Mode { boundary, subset, full, automatic };
enum class Status { safe, unknown, falsified };

/// Accepts "boundary", "subset", "full", "auto".
Mode parse_mode(std::string_view name);
std::string to_string(Mode mode);
Status parse_status(std::string_view name);
std::string to_string(Status status);

/// Decide whether N(input) lies in `safe`.
struct VerificationProblem {
  Network net;
  Box input;
  Box safe;
  Domain domain = Domain::box;
  Mode mode = Mode::automatic;
  /// Per-dimension cell counts (a single entry is broadcast to all dims).
  std::vector<std::size_t> grid{1};
  /// Grid doublings tried after an Unknown verdict.
  std::size_t max_refinements = 0;
  /// Seed for the falsification sampler.
  std::uint64_t seed = 0;
  /// Samples drawn over the input when a run is inconclusive; 0 disables
  /// falsification.
  std::size_t falsify_samples = 10000;
  unsigned threads = 0;
  /// Keep per-cell hulls in the verdict (for CSV dumps and plots).
  bool keep_cells = false;
};

struct CellReach {
  std::vector<std::size_t> index;
  Box cell;
  Box hull;
};

struct VerdictStats {
  std::size_t cells = 0;      // cells propagated
  std::size_t total = 0;      // cells in the full grid at this level
  std::size_t certified = 0;  // certified interior cells removed (subset path)
  std::size_t kept = 0;       // cells kept by subset extraction
  std::size_t refinement_level = 0;
  double wall_ms = 0.0;
  Mode path = Mode::full;  // mode that actually ran
  /// Boundary verdict obtained without certifying the network; only valid
  /// if the caller knows the network is a homeomorphism on the input.
  bool assumes_invertible = false;
  /// Subset mode fell back to full propagation (network not certifiable).
  bool fallback_full = false;
};

struct Verdict {
  Status status = Status::unknown;
  VerdictStats stats;
  Box output_hull;
  std::optional<std::vector<double>> counterexample;
  std::vector<CellReach> cells;
};

/// True iff every set's interval hull lies inside `safe`.
bool check_inclusion(std::span<const ReachSet> sets, const Box& safe);

/// Propagates only the boundary faces of the input.
Verdict verify_boundary(const VerificationProblem& p);
/// Removes certified interior cells and propagates the rest.
Verdict verify_subset(const VerificationProblem& p);
/// Propagates every grid cell.
Verdict verify_full(const VerificationProblem& p);
/// Certifies the whole input; boundary path if certified, subset path
/// otherwise. Doubles the grid on Unknown up to max_refinements times.
Verdict verify_auto(const VerificationProblem& p);

/// Dispatches on p.mode. Every mode gets the refinement loop.
Verdict verify(const VerificationProblem& p);

/// Grid counts expanded to the input dimension and validated.
std::vector<std::size_t> expand_grid(std::span<const std::size_t> grid, const Box& input);

}  // namespace setbound
