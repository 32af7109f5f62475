#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "setbound/certify.hpp"
#include "setbound/monte_carlo.hpp"
#include "setbound/network.hpp"
#include "setbound/report.hpp"
#include "setbound/topology.hpp"
#include "setbound/verifier.hpp"

namespace setbound::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raw problem flags; `problem` fills whatever the command line left unset.
struct ProblemArgs {
  std::string problem;
  std::string model;
  std::string input;
  std::string safe;
  std::string domain;
  std::string mode;
  std::string grid;
  std::optional<std::size_t> max_refine;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> falsify;
  unsigned threads = 0;
};

void add_problem_options(CLI::App& cmd, ProblemArgs& a, bool needs_safe) {
  cmd.add_option("--problem", a.problem, "problem JSON; command-line flags override its fields");
  cmd.add_option("--model", a.model, "network JSON");
  cmd.add_option("--input", a.input, "input box \"lo,hi;lo,hi;...\"");
  if (needs_safe) cmd.add_option("--safe", a.safe, "safe box \"lo,hi;lo,hi;...\"");
  cmd.add_option("--domain", a.domain, "box | zono");
  cmd.add_option("--grid", a.grid, "cells per dimension: k or k1,k2,...");
  cmd.add_option("--seed", a.seed, "sampler seed");
  cmd.add_option("--threads", a.threads, "worker threads (0: hardware concurrency)");
}

// Accepts "lo,hi;..." strings or [[lo,hi],...] arrays.
std::string box_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) throw ReportError("box must be a string or an array of [lo,hi] pairs");
  std::string out;
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ReportError("box entries must be [lo,hi] pairs");
    if (!out.empty()) out += ';';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", pair[0].get<double>(), pair[1].get<double>());
    out += buf;
  }
  return out;
}

std::string grid_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned()) return std::to_string(j.get<std::size_t>());
  if (!j.is_array()) throw ReportError("grid must be a count, a string or an array of counts");
  std::string out;
  for (const json& c : j) {
    if (!out.empty()) out += ',';
    out += std::to_string(c.get<std::size_t>());
  }
  return out;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void merge_problem_file(ProblemArgs& a) {
  if (a.problem.empty()) return;
  json j;
  try {
    j = json::parse(read_text(a.problem));
  } catch (const json::exception& e) {
    throw ReportError("invalid problem JSON '" + a.problem + "': " + e.what());
  }
  if (!j.is_object()) throw ReportError("problem JSON must be an object");
  try {
    if (a.model.empty() && j.contains("model")) {
      fs::path model = j["model"].get<std::string>();
      if (model.is_relative()) model = fs::path(a.problem).parent_path() / model;
      a.model = model.string();
    }
    if (a.input.empty() && j.contains("input")) a.input = box_text(j["input"]);
    if (a.safe.empty() && j.contains("safe")) a.safe = box_text(j["safe"]);
    if (a.domain.empty() && j.contains("domain")) a.domain = j["domain"].get<std::string>();
    if (a.mode.empty() && j.contains("mode")) a.mode = j["mode"].get<std::string>();
    if (a.grid.empty() && j.contains("grid")) a.grid = grid_text(j["grid"]);
    if (!a.max_refine && j.contains("max_refine")) a.max_refine = j["max_refine"].get<std::size_t>();
    if (!a.seed && j.contains("seed")) a.seed = j["seed"].get<std::uint64_t>();
    if (!a.falsify && j.contains("falsify")) a.falsify = j["falsify"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ReportError("invalid problem JSON '" + a.problem + "': " + e.what());
  }
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw std::invalid_argument(std::string(flag) + " is required");
}

Network load_model(const std::string& path) {
  require(path, "--model");
  return load_network_file(path);
}

VerificationProblem build_problem(ProblemArgs a) {
  merge_problem_file(a);
  require(a.input, "--input");
  require(a.safe, "--safe");
  VerificationProblem p{load_model(a.model), parse_box(a.input), parse_box(a.safe)};
  if (!a.domain.empty()) p.domain = parse_domain(a.domain);
  if (!a.mode.empty()) p.mode = parse_mode(a.mode);
  if (!a.grid.empty()) p.grid = parse_grid(a.grid);
  p.max_refinements = a.max_refine.value_or(0);
  p.seed = a.seed.value_or(0);
  if (a.falsify) p.falsify_samples = *a.falsify;
  p.threads = a.threads;
  return p;
}

int exit_code(Status s) {
  switch (s) {
    case Status::safe:
      return kExitSafe;
    case Status::unknown:
      return kExitUnknown;
    case Status::falsified:
      return kExitFalsified;
  }
  return kExitError;
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  write(f);
  if (!f) throw std::runtime_error("error writing '" + path + "'");
}

std::vector<Box> read_cells(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_cell_csv(in);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Set-based safety verification of feedforward networks"};
  app.name("setbound");
  app.require_subcommand(1);

  ProblemArgs verify_args;
  std::string verify_out, verify_cells;
  auto* verify = app.add_subcommand("verify", "decide whether N(input) lies in the safe box");
  add_problem_options(*verify, verify_args, true);
  verify->add_option("--mode", verify_args.mode, "boundary | subset | full | auto");
  verify->add_option("--max-refine", verify_args.max_refine, "grid doublings after an Unknown verdict");
  verify->add_option("--falsify", verify_args.falsify, "samples drawn to falsify an Unknown verdict (0: off)");
  verify->add_option("--out", verify_out, "verdict JSON path (default: stdout)");
  verify->add_option("--cells", verify_cells, "per-cell output hulls as CSV");

  ProblemArgs compare_args;
  std::string compare_out, compare_cells_prefix;
  auto* compare = app.add_subcommand("compare", "run boundary, subset and full modes on one grid");
  add_problem_options(*compare, compare_args, true);
  compare->add_option("--out", compare_out, "comparison JSON path");
  compare->add_option("--cells", compare_cells_prefix, "write PREFIX_<mode>.csv cell dumps");

  ProblemArgs certify_args;
  std::string certify_out;
  auto* certify = app.add_subcommand("certify", "per-cell homeomorphism certification");
  add_problem_options(*certify, certify_args, false);
  certify->add_option("--out", certify_out, "certification CSV path (default: stdout)");

  ProblemArgs mc_args;
  std::size_t mc_samples = 10000;
  std::string mc_out;
  auto* mc = app.add_subcommand("mc", "Monte-Carlo image estimate");
  add_problem_options(*mc, mc_args, true);
  mc->add_option("--samples", mc_samples, "sample count")->check(CLI::PositiveNumber);
  mc->add_option("--out", mc_out, "samples CSV path");

  std::string plot_full, plot_reduced, plot_mc, plot_safe, plot_out, plot_title;
  std::vector<std::size_t> plot_proj;
  int plot_width = 640, plot_height = 640;
  auto* plot = app.add_subcommand("plot", "SVG of cell hulls, samples and the safe box");
  plot->add_option("--full", plot_full, "cell CSV of the full run (blue)");
  plot->add_option("--boundary,--reduced", plot_reduced, "cell CSV of the boundary or subset run (red)");
  plot->add_option("--mc", plot_mc, "samples CSV (yellow)");
  plot->add_option("--safe", plot_safe, "safe box outline (green)");
  plot->add_option("--proj", plot_proj, "output dimensions to draw")->expected(2);
  plot->add_option("--title", plot_title, "plot title");
  plot->add_option("--width", plot_width)->check(CLI::PositiveNumber);
  plot->add_option("--height", plot_height)->check(CLI::PositiveNumber);
  plot->add_option("--out", plot_out, "SVG path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*verify) {
      VerificationProblem p = build_problem(verify_args);
      p.keep_cells = !verify_cells.empty();
      const Verdict v = setbound::verify(p);
      emit(verify_out, out, [&](std::ostream& os) { os << verdict_to_json(v) << '\n'; });
      if (!verify_cells.empty()) emit(verify_cells, out, [&](std::ostream& os) { write_cell_csv(os, v.cells); });
      if (v.stats.assumes_invertible) {
        err << "warning: boundary verdict assumes the network is a homeomorphism on the input\n";
      }
      if (v.stats.fallback_full) err << "warning: network is not square; subset mode ran the full grid\n";
      return exit_code(v.status);
    }

    if (*compare) {
      VerificationProblem p = build_problem(compare_args);
      p.max_refinements = 0;
      p.keep_cells = !compare_cells_prefix.empty();
      std::vector<CompareRow> rows;
      for (Mode m : {Mode::boundary, Mode::subset, Mode::full}) {
        p.mode = m;
        rows.push_back({m, setbound::verify(p)});
        if (p.keep_cells) {
          emit(compare_cells_prefix + "_" + to_string(m) + ".csv", out,
               [&](std::ostream& os) { write_cell_csv(os, rows.back().verdict.cells); });
        }
      }
      out << format_compare_table(rows);
      if (!compare_out.empty()) emit(compare_out, out, [&](std::ostream& os) { os << compare_to_json(rows) << '\n'; });
      return kExitSafe;
    }

    if (*certify) {
      ProblemArgs a = certify_args;
      merge_problem_file(a);
      require(a.input, "--input");
      const Network net = load_model(a.model);
      if (!net.is_square()) {
        throw std::invalid_argument("certify needs a square network (input " + std::to_string(net.input_dim()) +
                                    ", output " + std::to_string(net.output_dim()) + ")");
      }
      const Box input = parse_box(a.input);
      const std::vector<std::size_t> grid = a.grid.empty() ? std::vector<std::size_t>{1} : parse_grid(a.grid);
      const CellGrid cells(input, expand_grid(grid, input));
      const std::vector<CertificationResult> results = certify_grid(net, cells, a.threads);
      const auto certified = static_cast<std::size_t>(
          std::count_if(results.begin(), results.end(), [](const CertificationResult& r) { return r.certified; }));
      emit(certify_out, out, [&](std::ostream& os) { write_certification_csv(os, cells, results); });
      std::ostream& summary = certify_out.empty() ? err : out;
      char line[128];
      std::snprintf(line, sizeof line, "certified %zu of %zu cells (%.2f%%)\n", certified, results.size(),
                    100.0 * static_cast<double>(certified) / static_cast<double>(results.size()));
      summary << line;
      return kExitSafe;
    }

    if (*mc) {
      ProblemArgs a = mc_args;
      merge_problem_file(a);
      require(a.input, "--input");
      const Network net = load_model(a.model);
      const Box input = parse_box(a.input);
      std::optional<Box> safe;
      if (!a.safe.empty()) safe = parse_box(a.safe);
      const MonteCarloResult r = monte_carlo(net, input, mc_samples, a.seed.value_or(0), safe, a.threads);
      if (!mc_out.empty()) emit(mc_out, out, [&](std::ostream& os) { write_samples_csv(os, r); });
      json doc = json::object();
      doc["samples"] = mc_samples;
      json hull = json::array();
      for (const Interval& iv : r.image_hull.intervals()) hull.push_back({iv.lo(), iv.hi()});
      doc["image_hull"] = hull;
      if (safe) doc["violations"] = r.violations.size();
      out << doc.dump(2) << '\n';
      return safe && !r.violations.empty() ? kExitFalsified : kExitSafe;
    }

    if (*plot) {
      PlotData data;
      if (!plot_full.empty()) data.full_cells = read_cells(plot_full);
      if (!plot_reduced.empty()) data.reduced_cells = read_cells(plot_reduced);
      if (!plot_mc.empty()) {
        std::ifstream in(plot_mc);
        if (!in) throw std::runtime_error("cannot open '" + plot_mc + "'");
        data.samples = read_samples_csv(in);
      }
      if (!plot_safe.empty()) data.safe = parse_box(plot_safe);
      PlotOptions opt;
      if (!plot_proj.empty()) opt.projection = std::pair{plot_proj[0], plot_proj[1]};
      opt.width = plot_width;
      opt.height = plot_height;
      opt.title = plot_title;
      const std::string svg = render_svg(data, opt);
      emit(plot_out, out, [&](std::ostream& os) { os << svg; });
      return kExitSafe;
    }
  } catch (const std::exception& e) {
    err << "setbound: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace setbound::cli
