#include "setbound/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <tuple>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace setbound {

using ojson = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) throw ReportError("invalid number '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ReportError("invalid count '" + s + "'");
  return v;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

ojson box_to_json(const Box& b) {
  ojson arr = ojson::array();
  for (const Interval& d : b.intervals()) arr.push_back({d.lo(), d.hi()});
  return arr;
}

Box box_from_json(const ojson& j) {
  if (!j.is_array() || j.empty()) throw ReportError("box must be a non-empty array of [lo,hi] pairs");
  std::vector<Interval> dims;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ReportError("box entries must be [lo,hi] pairs");
    dims.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return Box(std::move(dims));
}

ojson verdict_json(const Verdict& v) {
  ojson stats = {
      {"cells", v.stats.cells},
      {"certified", v.stats.certified},
      {"kept", v.stats.kept},
      {"refinement_level", v.stats.refinement_level},
      {"wall_ms", v.stats.wall_ms},
      {"total", v.stats.total},
      {"mode", to_string(v.stats.path)},
      {"assumes_invertible", v.stats.assumes_invertible},
      {"fallback_full", v.stats.fallback_full},
  };
  ojson doc = {{"status", to_string(v.status)}, {"stats", std::move(stats)}};
  doc["output_hull"] = v.output_hull.empty() ? ojson::array() : box_to_json(v.output_hull);
  doc["refinement_level"] = v.stats.refinement_level;
  doc["counterexample"] = v.counterexample ? ojson(*v.counterexample) : ojson(nullptr);
  return doc;
}

std::vector<std::string> read_header(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ReportError("CSV is empty");
  return split(line, ',');
}

}  // namespace

std::string verdict_to_json(const Verdict& v, int indent) { return verdict_json(v).dump(indent); }

Verdict verdict_from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
    Verdict v;
    v.status = parse_status(doc.at("status").get<std::string>());
    const ojson& stats = doc.at("stats");
    v.stats.cells = stats.at("cells").get<std::size_t>();
    v.stats.certified = stats.at("certified").get<std::size_t>();
    v.stats.kept = stats.at("kept").get<std::size_t>();
    v.stats.refinement_level = stats.at("refinement_level").get<std::size_t>();
    v.stats.wall_ms = stats.at("wall_ms").get<double>();
    v.stats.total = stats.value("total", std::size_t{0});
    v.stats.path = parse_mode(stats.value("mode", std::string("full")));
    v.stats.assumes_invertible = stats.value("assumes_invertible", false);
    v.stats.fallback_full = stats.value("fallback_full", false);
    const ojson& hull = doc.at("output_hull");
    if (!hull.empty()) v.output_hull = box_from_json(hull);
    const ojson& cex = doc.at("counterexample");
    if (!cex.is_null()) v.counterexample = cex.get<std::vector<double>>();
    return v;
  } catch (const ojson::exception& e) {
    throw ReportError(std::string("invalid verdict JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ReportError(std::string("invalid verdict JSON: ") + e.what());
  }
}

Box parse_box(std::string_view text) {
  std::vector<Interval> dims;
  for (const std::string& part : split(text, ';')) {
    if (part.empty()) continue;
    const auto bounds = split(part, ',');
    if (bounds.size() != 2) throw ReportError("box component '" + part + "' must be lo,hi");
    const double lo = parse_double(bounds[0]);
    const double hi = parse_double(bounds[1]);
    if (lo > hi) throw ReportError("box component '" + part + "' has lo > hi");
    dims.emplace_back(lo, hi);
  }
  if (dims.empty()) throw ReportError("empty box '" + std::string(text) + "'");
  return Box(std::move(dims));
}

std::vector<std::size_t> parse_grid(std::string_view text) {
  std::vector<std::size_t> counts;
  for (const std::string& part : split(text, ',')) {
    const std::size_t c = parse_count(part);
    if (c == 0) throw ReportError("grid counts must be >= 1");
    counts.push_back(c);
  }
  return counts;
}

void write_cell_csv(std::ostream& os, std::span<const CellReach> cells) {
  const std::size_t n = cells.empty() ? 0 : cells.front().index.size();
  const std::size_t m = cells.empty() ? 0 : cells.front().hull.dim();
  for (std::size_t k = 0; k < n; ++k) os << (k ? "," : "") << "idx" << k;
  for (std::size_t k = 0; k < m; ++k) os << (n + k ? "," : "") << "out" << k << "_lo,out" << k << "_hi";
  os << '\n';
  for (const CellReach& c : cells) {
    for (std::size_t k = 0; k < n; ++k) os << (k ? "," : "") << c.index[k];
    for (std::size_t k = 0; k < m; ++k) os << (n + k ? "," : "") << exact(c.hull[k].lo()) << ',' << exact(c.hull[k].hi());
    os << '\n';
  }
}

std::vector<Box> read_cell_csv(std::istream& is) {
  const auto header = read_header(is);
  std::vector<std::size_t> lo_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "out" + std::to_string(lo_cols.size()) + "_lo") {
      if (i + 1 >= header.size() || header[i + 1] != "out" + std::to_string(lo_cols.size()) + "_hi") {
        throw ReportError("cell CSV: missing _hi column after " + header[i]);
      }
      lo_cols.push_back(i);
    }
  }
  if (lo_cols.empty()) throw ReportError("cell CSV: no out*_lo/out*_hi columns");
  std::vector<Box> boxes;
  std::string line;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw ReportError("cell CSV: ragged row '" + line + "'");
    std::vector<Interval> dims;
    for (std::size_t c : lo_cols) dims.emplace_back(parse_double(fields[c]), parse_double(fields[c + 1]));
    boxes.emplace_back(std::move(dims));
  }
  return boxes;
}

void write_certification_csv(std::ostream& os, const CellGrid& grid, std::span<const CertificationResult> results) {
  for (std::size_t k = 0; k < grid.dim(); ++k) os << 'i' << k << ',';
  os << "det_lo,det_hi,certified\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t idx : grid.multi_index(i)) os << idx << ',';
    os << exact(results[i].det_interval.lo()) << ',' << exact(results[i].det_interval.hi()) << ','
       << (results[i].certified ? 1 : 0) << '\n';
  }
}

void write_samples_csv(std::ostream& os, const MonteCarloResult& mc) {
  const Eigen::Index n = mc.points.rows();
  const Eigen::Index m = mc.images.rows();
  for (Eigen::Index k = 0; k < n; ++k) os << (k ? "," : "") << 'x' << k;
  for (Eigen::Index k = 0; k < m; ++k) os << ',' << 'y' << k;
  os << '\n';
  for (Eigen::Index s = 0; s < mc.points.cols(); ++s) {
    for (Eigen::Index k = 0; k < n; ++k) os << (k ? "," : "") << exact(mc.points(k, s));
    for (Eigen::Index k = 0; k < m; ++k) os << ',' << exact(mc.images(k, s));
    os << '\n';
  }
}

std::vector<std::vector<double>> read_samples_csv(std::istream& is) {
  const auto header = read_header(is);
  std::vector<std::size_t> y_cols;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y" + std::to_string(y_cols.size())) y_cols.push_back(i);
  }
  if (y_cols.empty()) throw ReportError("samples CSV: no y* columns");
  std::vector<std::vector<double>> points;
  std::string line;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) throw ReportError("samples CSV: ragged row '" + line + "'");
    std::vector<double> y;
    y.reserve(y_cols.size());
    for (std::size_t c : y_cols) y.push_back(parse_double(fields[c]));
    points.push_back(std::move(y));
  }
  return points;
}

std::string format_compare_table(std::span<const CompareRow> rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %10s %10s %10s %10s  %s\n", "mode", "cells", "certified", "verdict",
                "time_ms", "hull");
  os << line;
  for (const CompareRow& r : rows) {
    std::ostringstream hull;
    hull << r.verdict.output_hull;
    std::snprintf(line, sizeof line, "%-10s %10zu %10zu %10s %10.3f  ", to_string(r.mode).c_str(),
                  r.verdict.stats.cells, r.verdict.stats.certified, to_string(r.verdict.status).c_str(),
                  r.verdict.stats.wall_ms);
    os << line << hull.str() << '\n';
  }
  return os.str();
}

std::string compare_to_json(std::span<const CompareRow> rows, int indent) {
  ojson arr = ojson::array();
  for (const CompareRow& r : rows) {
    ojson row = verdict_json(r.verdict);
    arr.push_back({{"mode", to_string(r.mode)}, {"verdict", std::move(row)}});
  }
  return arr.dump(indent);
}

namespace {

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool empty() const { return lo > hi; }
};

std::size_t data_dim(const PlotData& data) {
  std::size_t dim = 0;
  const auto note = [&](std::size_t d) {
    if (dim == 0) dim = d;
    else if (dim != d) throw std::invalid_argument("plot data mixes dimensions " + std::to_string(dim) + " and " + std::to_string(d));
  };
  for (const Box& b : data.full_cells) note(b.dim());
  for (const Box& b : data.reduced_cells) note(b.dim());
  for (const auto& p : data.samples) note(p.size());
  if (data.safe) note(data.safe->dim());
  return dim;
}

}  // namespace

std::string render_svg(const PlotData& data, const PlotOptions& options) {
  const std::size_t dim = data_dim(data);
  std::size_t xd = 0;
  std::size_t yd = 1;
  if (options.projection) {
    std::tie(xd, yd) = *options.projection;
    if (dim != 0 && (xd >= dim || yd >= dim)) {
      throw std::invalid_argument("projection dimensions out of range for " + std::to_string(dim) + "-D data");
    }
  } else if (dim > 2) {
    throw std::invalid_argument("data has " + std::to_string(dim) + " dimensions; choose a projection");
  } else if (dim == 1) {
    throw std::invalid_argument("plot needs two-dimensional data");
  }

  Extent ex;
  Extent ey;
  const auto add_box = [&](const Box& b) {
    ex.add(b[xd].lo());
    ex.add(b[xd].hi());
    ey.add(b[yd].lo());
    ey.add(b[yd].hi());
  };
  for (const Box& b : data.full_cells) add_box(b);
  for (const Box& b : data.reduced_cells) add_box(b);
  if (data.safe) add_box(*data.safe);
  for (const auto& p : data.samples) {
    ex.add(p[xd]);
    ey.add(p[yd]);
  }
  const auto settle = [](Extent& e) {
    if (e.empty()) {
      e = {0.0, 1.0};
      return;
    }
    double pad = 0.05 * (e.hi - e.lo);
    if (pad == 0.0) pad = std::max(0.5 * std::abs(e.lo), 0.5);
    e.lo -= pad;
    e.hi += pad;
  };
  settle(ex);
  settle(ey);

  const double left = 80.0, right = 20.0, top = 40.0, bottom = 60.0;
  const double w = options.width, h = options.height;
  const double pw = w - left - right, ph = h - top - bottom;
  const auto sx = [&](double v) { return left + (v - ex.lo) / (ex.hi - ex.lo) * pw; };
  const auto sy = [&](double v) { return top + ph - (v - ey.lo) / (ey.hi - ey.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
     << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
     << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    os << "<text x=\"" << fixed(w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"14\">"
       << options.title << "</text>\n";
  }

  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(left + pw) << "\" y2=\""
     << fixed(top + ph) << "\"/>\n";
  os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left) << "\" y2=\""
     << fixed(top + ph) << "\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t < kTicks; ++t) {
    const double fx = ex.lo + (ex.hi - ex.lo) * t / (kTicks - 1);
    const double fy = ey.lo + (ey.hi - ey.lo) * t / (kTicks - 1);
    os << "<line x1=\"" << fixed(sx(fx)) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(sx(fx))
       << "\" y2=\"" << fixed(top + ph + 5) << "\"/>\n";
    os << "<text x=\"" << fixed(sx(fx)) << "\" y=\"" << fixed(top + ph + 18)
       << "\" stroke=\"none\" text-anchor=\"middle\">" << short_num(fx) << "</text>\n";
    os << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(sy(fy)) << "\" x2=\"" << fixed(left)
       << "\" y2=\"" << fixed(sy(fy)) << "\"/>\n";
    os << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(sy(fy) + 4)
       << "\" stroke=\"none\" text-anchor=\"end\">" << short_num(fy) << "</text>\n";
  }
  os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(h - 12) << "\" stroke=\"none\" text-anchor=\"middle\">y"
     << xd << "</text>\n";
  os << "<text x=\"16\" y=\"" << fixed(top + ph / 2) << "\" stroke=\"none\" text-anchor=\"middle\">y" << yd
     << "</text>\n";
  os << "</g>\n";

  const auto cells = [&](const char* id, const char* color, const std::vector<Box>& boxes) {
    os << "<g id=\"" << id << "\" fill=\"" << color << "\" fill-opacity=\"0.35\" stroke=\"" << color
       << "\" stroke-width=\"0.5\">\n";
    for (const Box& b : boxes) {
      const double x0 = sx(b[xd].lo()), x1 = sx(b[xd].hi());
      const double y0 = sy(b[yd].hi()), y1 = sy(b[yd].lo());
      os << "<rect class=\"cell\" x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(x1 - x0)
         << "\" height=\"" << fixed(y1 - y0) << "\"/>\n";
    }
    os << "</g>\n";
  };
  cells("full", "blue", data.full_cells);
  cells("reduced", "red", data.reduced_cells);

  os << "<g id=\"samples\" fill=\"yellow\" stroke=\"none\">\n";
  for (const auto& p : data.samples) {
    os << "<circle cx=\"" << fixed(sx(p[xd])) << "\" cy=\"" << fixed(sy(p[yd])) << "\" r=\"1.2\"/>\n";
  }
  os << "</g>\n";

  if (data.safe) {
    const Box& s = *data.safe;
    os << "<g id=\"safe\" fill=\"none\" stroke=\"green\" stroke-width=\"2\">\n";
    os << "<rect x=\"" << fixed(sx(s[xd].lo())) << "\" y=\"" << fixed(sy(s[yd].hi())) << "\" width=\""
       << fixed(sx(s[xd].hi()) - sx(s[xd].lo())) << "\" height=\"" << fixed(sy(s[yd].lo()) - sy(s[yd].hi()))
       << "\"/>\n</g>\n";
  }

  struct Entry {
    const char* label;
    const char* color;
  };
  constexpr Entry kLegend[] = {{"full", "blue"}, {"boundary/subset", "red"}, {"safe", "green"}, {"Monte-Carlo", "yellow"}};
  os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double ly = top + 6;
  for (const Entry& e : kLegend) {
    os << "<rect x=\"" << fixed(left + pw - 120) << "\" y=\"" << fixed(ly) << "\" width=\"10\" height=\"10\" fill=\""
       << e.color << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    os << "<text x=\"" << fixed(left + pw - 104) << "\" y=\"" << fixed(ly + 9) << "\">" << e.label << "</text>\n";
    ly += 16;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace setbound
