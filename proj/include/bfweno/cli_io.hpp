#pragma once

// Command-line driver and plain-text output (snapshot CSVs, convergence tables,
// well-balance reports).
//
//   bfweno run --case <name> --cells <N> [--mode wb|nonwb] [--cf <v>] [--snapshots t1,t2] [--out <dir>]
//   bfweno converge --case wave --levels 25,50,...,1600 [--out <dir>]
//   bfweno verify-wb --cells 200 --tend 5 [--out <dir>]
//
// Exit codes: 0 success, 1 usage, 2 runtime (blow-up / state error), 3 I/O.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bfweno/cases.hpp"
#include "bfweno/errors.hpp"
#include "bfweno/integrator.hpp"
#include "bfweno/mesh_state.hpp"

namespace bfweno::cli {

enum class Command { run, converge, verify_wb };

struct RunConfig {
  Command command = Command::run;
  std::string case_name;
  int n_cells = 200;
  Mode mode = Mode::well_balanced;
  double friction = 0.0;
  std::vector<double> snapshots;        // empty: the case's own output times
  std::optional<double> t_end;          // empty: the case's own end time
  std::vector<int> levels;              // converge only
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> log_path;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_fixed(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

inline std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

inline Mode parse_mode(const std::string& s) {
  if (s == "wb") return Mode::well_balanced;
  if (s == "nonwb" || s == "non-wb") return Mode::non_well_balanced;
  throw UsageError("unknown mode '" + s + "' (expected wb or nonwb)");
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  return f;
}

inline void check_written(std::ofstream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace detail

/// Parses argv (argv[0] is the program name). Throws UsageError on bad input.
inline RunConfig parse_cli(int argc, const char* const* argv) {
  CLI::App app{"Well-balanced WENO solver for 1D arterial blood flow", "bfweno"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  std::string mode = "wb";
  std::string out = ".";
  std::string log;

  auto* run = app.add_subcommand("run", "simulate one benchmark case");
  run->add_option("--case", cfg.case_name, "case name")->required();
  run->add_option("--cells", cfg.n_cells, "number of cells")->required();
  run->add_option("--mode", mode, "wb or nonwb");
  run->add_option("--cf", cfg.friction, "friction coefficient C_f (wave_damping)");
  run->add_option("--snapshots", cfg.snapshots, "output times")->delimiter(',');
  auto* run_tend = run->add_option("--tend", "end time override");
  run->add_option("--out", out, "output directory");
  run->add_option("--log", log, "write the step log to this CSV file");

  auto* conv = app.add_subcommand("converge", "grid refinement study against the exact solution");
  conv->add_option("--case", cfg.case_name, "case name")->required();
  conv->add_option("--levels", cfg.levels, "cell counts")->delimiter(',')->required();
  conv->add_option("--mode", mode, "wb or nonwb");
  auto* conv_t = conv->add_option("--t", "evaluation time");
  conv->add_option("--out", out, "output directory");

  auto* wb = app.add_subcommand("verify-wb", "preserve the aneurism rest state and report errors");
  wb->add_option("--cells", cfg.n_cells, "number of cells");
  auto* wb_tend = wb->add_option("--tend", "end time");
  wb->add_option("--mode", mode, "wb or nonwb");
  wb->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  cfg.mode = detail::parse_mode(mode);
  cfg.out_dir = out;
  if (!log.empty()) cfg.log_path = std::filesystem::path(log);

  auto opt_double = [](CLI::Option* o) -> std::optional<double> {
    if (o->count() == 0) return std::nullopt;
    return o->as<double>();
  };

  if (run->parsed()) {
    cfg.command = Command::run;
    cfg.t_end = opt_double(run_tend);
  } else if (conv->parsed()) {
    cfg.command = Command::converge;
    cfg.t_end = opt_double(conv_t);
    if (cfg.levels.size() < 2) throw UsageError("converge needs at least two levels");
    for (int n : cfg.levels)
      if (n < 25) throw UsageError("every level needs at least 25 cells");
    if (!std::is_sorted(cfg.levels.begin(), cfg.levels.end())) throw UsageError("levels must be increasing");
  } else {
    cfg.command = Command::verify_wb;
    cfg.case_name = "eternal_rest";
    cfg.t_end = opt_double(wb_tend);
  }

  const auto& names = case_names();
  if (std::find(names.begin(), names.end(), cfg.case_name) == names.end())
    throw UsageError("unknown case '" + cfg.case_name + "'");
  if (cfg.command != Command::converge && cfg.n_cells < 25)
    throw UsageError("--cells must be at least 25, got " + std::to_string(cfg.n_cells));
  if (cfg.friction < 0.0) throw UsageError("--cf must be non-negative");
  if (cfg.t_end && !(*cfg.t_end >= 0.0)) throw UsageError("end time must be non-negative");
  return cfg;
}

/// Case with the command-line overrides applied.
inline CaseSpec case_for(const RunConfig& cfg) {
  CaseSpec c = build_case(cfg.case_name, cfg.friction);
  if (cfg.t_end) c.t_end = *cfg.t_end;
  if (!cfg.snapshots.empty()) c.snapshots = cfg.snapshots;
  if (cfg.t_end && cfg.snapshots.empty()) c.snapshots = {c.t_end};
  return c;
}

struct SnapshotHeader {
  std::string case_name;
  int n_cells = 0;
  double t = 0.0;
  Mode mode = Mode::well_balanced;
};

/// CSV with `#` metadata lines and one row `x,A,Q,R,u,A0` per interior node.
inline void write_snapshot(const FieldPair& s, const Grid& grid, const VesselGeometry& geo,
                           const SnapshotHeader& h, const std::filesystem::path& path,
                           const SchemeConfig& scheme = {}) {
  auto f = detail::open_out(path);
  f << "# case: " << h.case_name << "\n"
    << "# n_cells: " << h.n_cells << "\n"
    << "# t: " << detail::fmt17(h.t) << "\n"
    << "# mode: " << to_string(h.mode) << "\n"
    << "# scheme: WENO5 (eps " << detail::fmt17(scheme.eps_weno)
    << "), Lax-Friedrichs splitting in characteristic variables, SSP-RK3, cfl " << detail::fmt17(scheme.cfl)
    << "\n"
    << "# columns: x,A,Q,R,u,A0\n";
  for (std::size_t i = grid.first(); i < grid.last(); ++i) {
    const Primitive p = primitive_from_conserved(s.A[i], s.Q[i], static_cast<std::ptrdiff_t>(i) - grid.ghost_width, h.t);
    f << detail::fmt17(grid.at(i)) << ',' << detail::fmt17(s.A[i]) << ',' << detail::fmt17(s.Q[i]) << ','
      << detail::fmt17(p.R) << ',' << detail::fmt17(p.u) << ',' << detail::fmt17(geo.A0[i]) << '\n';
  }
  detail::check_written(f, path);
}

struct SnapshotRow {
  double x, A, Q, R, u, A0;
};

struct SnapshotFile {
  SnapshotHeader header;
  std::vector<SnapshotRow> rows;
};

inline SnapshotFile read_snapshot(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  SnapshotFile out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string val = line.substr(colon + 2);
      if (key == "case") out.header.case_name = val;
      else if (key == "n_cells") out.header.n_cells = std::stoi(val);
      else if (key == "t") out.header.t = std::stod(val);
      else if (key == "mode") out.header.mode = detail::parse_mode(val);
      continue;
    }
    std::istringstream ls(line);
    SnapshotRow r{};
    char comma;
    ls >> r.x >> comma >> r.A >> comma >> r.Q >> comma >> r.R >> comma >> r.u >> comma >> r.A0;
    if (!ls) throw IoError("malformed row in '" + path.string() + "': " + line);
    out.rows.push_back(r);
  }
  return out;
}

/// CSV `N,L1_A,order_A,L1_Q,order_Q`; order cells are empty where undefined.
inline void write_convergence_table(const ConvergenceTable& table, const std::filesystem::path& path) {
  if (table.rows.size() < 2) throw UsageError("convergence table needs at least two levels");
  auto f = detail::open_out(path);
  f << "# case: " << table.case_name << "\n"
    << "# t: " << detail::fmt17(table.t) << "\n"
    << "# dt_rule: " << table.dt_rule << "\n"
    << "N,L1_A,order_A,L1_Q,order_Q\n";
  for (const auto& r : table.rows) {
    f << r.n_cells << ',' << detail::fmt_sci(r.l1_A) << ','
      << (r.order_A ? detail::fmt_fixed(*r.order_A, 4) : "") << ',' << detail::fmt_sci(r.l1_Q) << ','
      << (r.order_Q ? detail::fmt_fixed(*r.order_Q, 4) : "") << '\n';
  }
  detail::check_written(f, path);
}

inline ConvergenceTable read_convergence_table(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  ConvergenceTable t;
  std::string line;
  bool header_seen = false;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# case: ", 0) == 0) t.case_name = line.substr(8);
      if (line.rfind("# t: ", 0) == 0) t.t = std::stod(line.substr(5));
      if (line.rfind("# dt_rule: ", 0) == 0) t.dt_rule = line.substr(11);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (cells.size() < 5) cells.emplace_back();
    ConvergenceRow r;
    r.n_cells = std::stoi(cells[0]);
    r.l1_A = std::stod(cells[1]);
    if (!cells[2].empty()) r.order_A = std::stod(cells[2]);
    r.l1_Q = std::stod(cells[3]);
    if (!cells[4].empty()) r.order_Q = std::stod(cells[4]);
    t.rows.push_back(r);
  }
  return t;
}

inline void write_step_log(const std::vector<StepRecord>& log, const std::filesystem::path& path) {
  auto f = detail::open_out(path);
  f << "step,t,dt,max_speed\n";
  for (const auto& r : log)
    f << r.step << ',' << detail::fmt17(r.t) << ',' << detail::fmt17(r.dt) << ',' << detail::fmt17(r.max_speed) << '\n';
  detail::check_written(f, path);
}

struct WellBalanceReport {
  int n_cells = 0;
  double t = 0.0;
  Mode mode = Mode::well_balanced;
  ErrorReport errors;
};

inline void write_wb_report(const WellBalanceReport& r, const std::filesystem::path& path) {
  auto f = detail::open_out(path);
  f << "N,t,mode,L1_A,L1_Q,Linf_A,Linf_Q\n"
    << r.n_cells << ',' << detail::fmt17(r.t) << ',' << to_string(r.mode) << ',' << detail::fmt17(r.errors.A.l1)
    << ',' << detail::fmt17(r.errors.Q.l1) << ',' << detail::fmt17(r.errors.A.linf) << ','
    << detail::fmt17(r.errors.Q.linf) << '\n';
  detail::check_written(f, path);
}

inline WellBalanceReport read_wb_report(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  std::getline(f, line);
  std::getline(f, line);
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (cells.size() != 7) throw IoError("malformed well-balance report '" + path.string() + "'");
  WellBalanceReport r;
  r.n_cells = std::stoi(cells[0]);
  r.t = std::stod(cells[1]);
  r.mode = detail::parse_mode(cells[2]);
  r.errors.A.l1 = std::stod(cells[3]);
  r.errors.Q.l1 = std::stod(cells[4]);
  r.errors.A.linf = std::stod(cells[5]);
  r.errors.Q.linf = std::stod(cells[6]);
  return r;
}

inline std::filesystem::path snapshot_path(const RunConfig& cfg, double t) {
  return cfg.out_dir / (cfg.case_name + "_N" + std::to_string(cfg.n_cells) + "_" + to_string(cfg.mode) + "_t" +
                        detail::time_tag(t) + ".csv");
}

inline int execute(const RunConfig& cfg, std::ostream& out) {
  SchemeConfig scheme;
  scheme.mode = cfg.mode;
  const CaseSpec c = case_for(cfg);

  switch (cfg.command) {
    case Command::run: {
      const Grid grid = build_grid(c.x_min, c.x_max, cfg.n_cells);
      RunOptions opts;
      opts.keep_log = cfg.log_path.has_value();
      const RunResult res = run_until(c, grid, scheme, opts);
      for (const auto& snap : res.snapshots) {
        const auto path = snapshot_path(cfg, snap.t);
        write_snapshot(snap.state, grid, res.geometry, {c.name, grid.n_cells, snap.t, cfg.mode}, path, scheme);
        out << "wrote " << path.string() << "\n";
      }
      if (cfg.log_path) write_step_log(res.log, *cfg.log_path);
      out << c.name << ": " << res.steps << " steps to t = " << res.t << " (" << res.dt_rule_note << ")\n";
      return 0;
    }
    case Command::converge: {
      const double t_eval = cfg.t_end.value_or(c.params.count("t_error") ? c.param("t_error") : c.t_end);
      const ConvergenceTable table = convergence_study(c, cfg.levels, scheme, t_eval);
      const auto path = cfg.out_dir / ("convergence_" + c.name + ".csv");
      write_convergence_table(table, path);
      out << "  N        L1(A)    order      L1(Q)    order\n";
      for (const auto& r : table.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%5d  %.4e  %6s  %.4e  %6s\n", r.n_cells, r.l1_A,
                      r.order_A ? detail::fmt_fixed(*r.order_A, 2).c_str() : "", r.l1_Q,
                      r.order_Q ? detail::fmt_fixed(*r.order_Q, 2).c_str() : "");
        out << buf;
      }
      out << "wrote " << path.string() << "\n";
      return 0;
    }
    case Command::verify_wb: {
      CaseSpec rest = c;
      rest.t_end = cfg.t_end.value_or(5.0);
      rest.snapshots.clear();
      const Grid grid = build_grid(rest.x_min, rest.x_max, cfg.n_cells);
      const RunResult res = run_until(rest, grid, scheme);
      WellBalanceReport rep;
      rep.n_cells = grid.n_cells;
      rep.t = res.t;
      rep.mode = cfg.mode;
      rep.errors = error_norms(res.state, grid, [&](double x) { return rest.exact(x, res.t); });
      const auto path = cfg.out_dir / ("verify_wb_N" + std::to_string(grid.n_cells) + "_" + to_string(cfg.mode) + ".csv");
      write_wb_report(rep, path);
      write_snapshot(res.state, grid, res.geometry, {rest.name, grid.n_cells, res.t, cfg.mode},
                     snapshot_path(cfg, res.t), scheme);
      char buf[200];
      std::snprintf(buf, sizeof buf, "steps %ld, t = %g\nL1(A) = %.3e  L1(Q) = %.3e  Linf(A) = %.3e  Linf(Q) = %.3e\n",
                    res.steps, res.t, rep.errors.A.l1, rep.errors.Q.l1, rep.errors.A.linf, rep.errors.Q.linf);
      out << buf << "wrote " << path.string() << "\n";
      return 0;
    }
  }
  return 0;
}

/// Full driver with exit-code mapping.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = parse_cli(argc, argv);
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 1;
  }
  try {
    return execute(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const StateError& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
}

inline int main(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<const char*> argv{"bfweno"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bfweno::cli
