#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setbound/box.hpp"
#include "setbound/certify.hpp"
#include "setbound/monte_carlo.hpp"
#include "setbound/verifier.hpp"

namespace setbound {

/// Thrown for malformed report inputs (CSV, JSON, box strings).
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Verdict JSON:
// {"status":"safe|unknown|falsified",
//  "stats":{"cells":..,"certified":..,"kept":..,"refinement_level":..,"wall_ms":..,
//           "total":..,"mode":..,"assumes_invertible":..,"fallback_full":..},
//  "output_hull":[[lo,hi],...], "refinement_level":.., "counterexample":[...]|null}
std::string verdict_to_json(const Verdict& v, int indent = 2);
/// Inverse of verdict_to_json for the fields it writes (per-cell data is
/// not part of the document).
Verdict verdict_from_json(std::string_view text);

/// Parses "lo,hi;lo,hi;..." into a box.
Box parse_box(std::string_view text);
/// Parses "k" or "k1,k2,..." into grid counts.
std::vector<std::size_t> parse_grid(std::string_view text);

/// Header idx0..idx{n-1},out0_lo,out0_hi,...; one row per cell.
void write_cell_csv(std::ostream& os, std::span<const CellReach> cells);
/// Output hulls from a cell CSV written by write_cell_csv.
std::vector<Box> read_cell_csv(std::istream& is);

/// Header i0..i{n-1},det_lo,det_hi,certified.
void write_certification_csv(std::ostream& os, const CellGrid& grid, std::span<const CertificationResult> results);

/// Header x0..,y0..; one row per sample.
void write_samples_csv(std::ostream& os, const MonteCarloResult& mc);
/// Image points (the y columns) of a samples CSV.
std::vector<std::vector<double>> read_samples_csv(std::istream& is);

struct CompareRow {
  Mode mode;
  Verdict verdict;
};

/// Fixed-width text table: mode, cells, verdict, time, hull.
std::string format_compare_table(std::span<const CompareRow> rows);
std::string compare_to_json(std::span<const CompareRow> rows, int indent = 2);

struct PlotData {
  std::vector<Box> full_cells;     // blue
  std::vector<Box> reduced_cells;  // red: boundary or subset cells
  std::vector<std::vector<double>> samples;  // yellow
  std::optional<Box> safe;         // green outline
};

struct PlotOptions {
  /// Output dimensions to draw; required when the data has more than two.
  std::optional<std::pair<std::size_t, std::size_t>> projection;
  int width = 640;
  int height = 640;
  std::string title;
};

/// Deterministic SVG of a 2-D projection. Throws std::invalid_argument if the
/// data has more than two dimensions and no projection is given.
std::string render_svg(const PlotData& data, const PlotOptions& options = {});

}  // namespace setbound
