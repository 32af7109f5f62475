#include "setbound/verifier.hpp"

#include <chrono>
#include <stdexcept>
#include <utility>

#include "setbound/certify.hpp"
#include "setbound/detail/parallel.hpp"
#include "setbound/monte_carlo.hpp"
#include "setbound/topology.hpp"

namespace setbound {

Mode parse_mode(std::string_view name) {
  if (name == "boundary") return Mode::boundary;
  if (name == "subset") return Mode::subset;
  if (name == "full") return Mode::full;
  if (name == "auto") return Mode::automatic;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::boundary:
      return "boundary";
    case Mode::subset:
      return "subset";
    case Mode::full:
      return "full";
    case Mode::automatic:
      return "auto";
  }
  return "?";
}

Status parse_status(std::string_view name) {
  if (name == "safe") return Status::safe;
  if (name == "unknown") return Status::unknown;
  if (name == "falsified") return Status::falsified;
  throw std::invalid_argument("unknown status '" + std::string(name) + "'");
}

std::string to_string(Status status) {
  switch (status) {
    case Status::safe:
      return "safe";
    case Status::unknown:
      return "unknown";
    case Status::falsified:
      return "falsified";
  }
  return "?";
}

bool check_inclusion(std::span<const ReachSet> sets, const Box& safe) {
  for (const ReachSet& s : sets) {
    if (!contains(safe, s.hull())) return false;
  }
  return true;
}

std::vector<std::size_t> expand_grid(std::span<const std::size_t> grid, const Box& input) {
  std::vector<std::size_t> counts;
  if (grid.size() == 1) {
    counts.assign(input.dim(), grid[0]);
  } else if (grid.size() == input.dim()) {
    counts.assign(grid.begin(), grid.end());
  } else {
    throw std::invalid_argument("grid has " + std::to_string(grid.size()) + " counts for a " +
                                std::to_string(input.dim()) + "-dimensional input");
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) throw std::invalid_argument("grid counts must be >= 1");
    if (input.is_degenerate(k)) counts[k] = 1;
  }
  return counts;
}

namespace {

using Clock = std::chrono::steady_clock;

void validate(const VerificationProblem& p) {
  if (p.input.dim() != p.net.input_dim()) {
    throw std::invalid_argument("input box has dimension " + std::to_string(p.input.dim()) +
                                ", network expects " + std::to_string(p.net.input_dim()));
  }
  if (p.safe.dim() != p.net.output_dim()) {
    throw std::invalid_argument("safe box has dimension " + std::to_string(p.safe.dim()) +
                                ", network produces " + std::to_string(p.net.output_dim()));
  }
}

std::vector<std::size_t> scaled_grid(const VerificationProblem& p, std::size_t level) {
  std::vector<std::size_t> counts = expand_grid(p.grid, p.input);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (!p.input.is_degenerate(k)) counts[k] <<= level;
  }
  return counts;
}

// Propagates cells, checks inclusion, and tries to falsify on failure.
Verdict assess(const VerificationProblem& p, std::vector<IndexedCell> cells, VerdictStats stats) {
  std::vector<Box> hulls(cells.size());
  detail::parallel_for(
      cells.size(), [&](std::size_t i) { hulls[i] = propagate(p.net, cells[i].cell, p.domain).hull(); },
      p.threads);

  Verdict v;
  stats.cells = cells.size();
  v.stats = stats;
  bool inside = true;
  std::vector<std::size_t> offending;
  for (std::size_t i = 0; i < hulls.size(); ++i) {
    v.output_hull = v.output_hull.empty() ? hulls[i] : hull(v.output_hull, hulls[i]);
    if (!contains(p.safe, hulls[i])) {
      inside = false;
      offending.push_back(i);
    }
  }
  if (p.keep_cells) {
    v.cells.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      v.cells.push_back({std::move(cells[i].index), std::move(cells[i].cell), std::move(hulls[i])});
    }
  }
  if (inside) {
    v.status = Status::safe;
    return v;
  }

  v.status = Status::unknown;
  if (p.falsify_samples == 0) return v;
  const auto is_violation = [&](const std::vector<double>& x) {
    const Eigen::VectorXd y = forward_point(p.net, x);
    return !p.safe.contains(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  };
  // Centres of the offending cells first; they are points of the input.
  for (std::size_t i : offending) {
    const Box& cell = p.keep_cells ? v.cells[i].cell : cells[i].cell;
    std::vector<double> x = cell.center();
    if (is_violation(x)) {
      v.status = Status::falsified;
      v.counterexample = std::move(x);
      return v;
    }
  }
  const MonteCarloResult mc = monte_carlo(p.net, p.input, p.falsify_samples, p.seed, p.safe, p.threads);
  if (!mc.violations.empty()) {
    const auto col = mc.points.col(static_cast<Eigen::Index>(mc.violations.front()));
    std::vector<double> x(col.data(), col.data() + col.size());
    if (is_violation(x)) {
      v.status = Status::falsified;
      v.counterexample = std::move(x);
    }
  }
  return v;
}

std::vector<IndexedCell> grid_cells(const CellGrid& grid, std::span<const std::size_t> flat) {
  std::vector<IndexedCell> cells;
  cells.reserve(flat.size());
  for (std::size_t i : flat) {
    std::vector<std::size_t> index = grid.multi_index(i);
    Box cell = grid.cell(index);
    cells.push_back({std::move(index), std::move(cell)});
  }
  return cells;
}

Verdict run_full(const VerificationProblem& p, std::size_t level) {
  const CellGrid grid(p.input, scaled_grid(p, level));
  std::vector<std::size_t> all(grid.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  VerdictStats stats;
  stats.path = Mode::full;
  stats.total = grid.size();
  stats.kept = grid.size();
  return assess(p, grid_cells(grid, all), stats);
}

Verdict run_boundary(const VerificationProblem& p, std::size_t level, bool certified) {
  const std::vector<std::size_t> counts = scaled_grid(p, level);
  VerdictStats stats;
  stats.path = Mode::boundary;
  stats.total = CellGrid(p.input, counts).size();
  stats.assumes_invertible = !certified;
  return assess(p, boundary_cells(p.input, counts), stats);
}

Verdict run_subset(const VerificationProblem& p, std::size_t level) {
  if (!certifiable(p.net)) {
    Verdict v = run_full(p, level);
    v.stats.fallback_full = true;
    return v;
  }
  const SubsetExtraction ex = extract_subset(p.net, p.input, scaled_grid(p, level), p.threads);
  VerdictStats stats;
  stats.path = Mode::subset;
  stats.total = ex.total();
  stats.certified = ex.interior.size();
  stats.kept = ex.kept.size();
  return assess(p, grid_cells(ex.grid, ex.kept), stats);
}

bool certify_input(const VerificationProblem& p) {
  return certifiable(p.net) && certify_homeomorphism(p.net, p.input).certified;
}

template <typename Run>
Verdict refine(const VerificationProblem& p, Run&& run) {
  validate(p);
  const auto start = Clock::now();
  Verdict v;
  for (std::size_t level = 0; level <= p.max_refinements; ++level) {
    v = run(level);
    v.stats.refinement_level = level;
    if (v.status != Status::unknown) break;
  }
  v.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return v;
}

Verdict timed(const VerificationProblem& p, Verdict (*run)(const VerificationProblem&, std::size_t)) {
  validate(p);
  const auto start = Clock::now();
  Verdict v = run(p, 0);
  v.stats.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return v;
}

}  // namespace

Verdict verify_boundary(const VerificationProblem& p) {
  return timed(p, [](const VerificationProblem& q, std::size_t level) { return run_boundary(q, level, false); });
}

Verdict verify_subset(const VerificationProblem& p) { return timed(p, run_subset); }

Verdict verify_full(const VerificationProblem& p) { return timed(p, run_full); }

Verdict verify_auto(const VerificationProblem& p) {
  std::optional<bool> certified;
  return refine(p, [&](std::size_t level) {
    if (!certified) certified = certify_input(p);
    return *certified ? run_boundary(p, level, true) : run_subset(p, level);
  });
}

Verdict verify(const VerificationProblem& p) {
  switch (p.mode) {
    case Mode::boundary:
      return refine(p, [&](std::size_t level) { return run_boundary(p, level, false); });
    case Mode::subset:
      return refine(p, [&](std::size_t level) { return run_subset(p, level); });
    case Mode::full:
      return refine(p, [&](std::size_t level) { return run_full(p, level); });
    case Mode::automatic:
      return verify_auto(p);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace setbound
