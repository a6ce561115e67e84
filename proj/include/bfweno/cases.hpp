#pragma once

// The six benchmark problems, their closed-form solutions, error norms and the
// grid-refinement driver.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfweno/boundaries.hpp"
#include "bfweno/case_spec.hpp"
#include "bfweno/char_flux.hpp"
#include "bfweno/errors.hpp"
#include "bfweno/integrator.hpp"
#include "bfweno/mesh_state.hpp"

namespace bfweno {

inline const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"tourniquet",          "wave",
                                              "eternal_rest",        "pulse_to_expansion",
                                              "pulse_from_expansion", "wave_damping"};
  return names;
}

namespace detail {

inline Conserved rest_with_radius(double r) { return {kPi * r * r, 0.0}; }

/// Aneurism: flat, smooth rise, plateau, smooth fall.
inline double aneurism_radius(double x, double r_base, double dr, double x1, double x2, double x3,
                              double x4) {
  if (x <= x1 || x >= x4) return r_base;
  if (x < x2) return r_base + 0.5 * dr * (std::sin((x - x1) / (x2 - x1) * kPi - 0.5 * kPi) + 1.0);
  if (x <= x3) return r_base + dr;
  return r_base + 0.5 * dr * (std::cos((x - x3) / (x4 - x3) * kPi) + 1.0);
}

/// Expansion: wide on [0, x1], cosine taper to the narrow radius on [x1, x2].
inline double expansion_radius(double x, double r_narrow, double dr, double x1, double x2) {
  if (x <= x1) return r_narrow + dr;
  if (x <= x2) return r_narrow + 0.5 * dr * (1.0 + std::cos((x - x1) / (x2 - x1) * kPi));
  return r_narrow;
}

inline CaseSpec pulse_case(const std::string& name, double start_frac) {
  CaseSpec c;
  c.name = name;
  const double L = 0.16;
  const double r_left = 5e-3, r_right = 4e-3, dr = 1e-3, eps = 5e-3;
  const double x1 = 19.0 * L / 40.0, x2 = L / 2.0;
  c.x_min = 0.0;
  c.x_max = L;
  c.k = 1e8;
  c.rho = 1060.0;
  c.t_end = 0.006;
  c.snapshots = {0.0, 0.002, 0.006};
  c.params = {{"L", L},   {"R_L", r_left}, {"R_R", r_right}, {"dR", dr},
              {"eps", eps}, {"x1", x1},      {"x2", x2},       {"pulse_start", start_frac * L},
              {"pulse_end", (start_frac + 0.2) * L}};
  c.radius_profile = [=](double x) { return expansion_radius(x, r_right, dr, x1, x2); };
  const double a = start_frac * L, b = (start_frac + 0.2) * L;
  c.initial = [=](double x) {
    const double r0 = expansion_radius(x, r_right, dr, x1, x2);
    if (x >= a && x <= b) return rest_with_radius(r0 * (1.0 + eps * std::sin(100.0 / (20.0 * L) * kPi * (x - a))));
    return rest_with_radius(r0);
  };
  return c;
}

}  // namespace detail

/// Wavenumber (k_r) and spatial decay rate (k_i <= 0) of the linear damped wave.
struct DampingRates {
  double k_r = 0.0;
  double k_i = 0.0;
  double omega = 0.0;
  double c0 = 0.0;
};

inline DampingRates damping_rates(double friction, double k, double rho, double r0, double period) {
  DampingRates d;
  d.omega = 2.0 * kPi / period;
  d.c0 = std::sqrt(k * r0 / (2.0 * rho));
  const double a0 = kPi * r0 * r0;
  const double w = d.omega, c = d.c0;
  const double mag = std::pow(std::pow(w / c, 4) + std::pow(w * friction / (a0 * c * c), 2), 0.25);
  const double phase = 0.5 * std::atan(-friction / (a0 * w));
  d.k_r = mag * std::cos(phase);
  d.k_i = mag * std::sin(phase);
  return d;
}

/// Builds a benchmark by name. `friction` is only used by wave_damping.
inline CaseSpec build_case(const std::string& name, double friction = 0.0) {
  CaseSpec c;
  c.name = name;
  if (name == "tourniquet") {
    const double r_left = 5e-3, r_right = 4e-3;
    c.x_min = -0.04;
    c.x_max = 0.04;
    c.k = 1e7;
    c.rho = 1060.0;
    c.t_end = 0.005;
    c.snapshots = {0.005};
    c.params = {{"R_L", r_left}, {"R_R", r_right}, {"R0", r_right}};
    c.radius_profile = [=](double) { return r_right; };
    c.initial = [=](double x) { return detail::rest_with_radius(x <= 0.0 ? r_left : r_right); };
    return c;
  }
  if (name == "wave") {
    const double L = 0.16, eps = 5e-3, r0 = 4e-3;
    c.x_min = 0.0;
    c.x_max = L;
    c.k = 1e8;
    c.rho = 1060.0;
    c.t_end = 0.006;
    c.snapshots = {0.0, 0.002, 0.004, 0.006};
    const double c0 = std::sqrt(c.k * r0 / (2.0 * c.rho));
    c.params = {{"L", L}, {"eps", eps}, {"R0", r0}, {"c0", c0}, {"t_error", 0.004}};
    c.radius_profile = [=](double) { return r0; };
    const double a = 0.4 * L, b = 0.6 * L;
    c.initial = [=](double x) {
      if (x >= a && x <= b) {
        const double s = 1.0 + eps * std::sin(kPi * (x - a) / (0.2 * L));
        return Conserved{kPi * r0 * r0 * s * s, 0.0};
      }
      return detail::rest_with_radius(r0);
    };
    // Linear superposition of two counter-propagating humps.
    auto phi = [=](double x) { return (x >= a && x <= b) ? r0 * std::sin(kPi * (x - a) / (0.2 * L)) : 0.0; };
    c.exact = [=](double x, double t) {
      const double pl = phi(x - c0 * t), pr = phi(x + c0 * t);
      const double R = r0 + 0.5 * eps * (pl + pr);
      const double u = -0.5 * eps * (c0 / r0) * (-pl + pr);
      return conserved_from_primitive(R, u);
    };
    return c;
  }
  if (name == "eternal_rest") {
    const double r_base = 4e-3, dr = 1e-3, L = 0.14;
    const double x1 = 1e-2, x2 = 3.05e-2, x3 = 4.95e-2, x4 = 7e-2;
    c.x_min = 0.0;
    c.x_max = L;
    c.k = 1e8;
    c.rho = 1060.0;
    c.t_end = 5.0;
    c.snapshots = {5.0};
    c.params = {{"R_tilde", r_base}, {"dR", dr}, {"L", L}, {"x1", x1}, {"x2", x2}, {"x3", x3}, {"x4", x4}};
    c.radius_profile = [=](double x) { return detail::aneurism_radius(x, r_base, dr, x1, x2, x3, x4); };
    c.initial = [=](double x) {
      return detail::rest_with_radius(detail::aneurism_radius(x, r_base, dr, x1, x2, x3, x4));
    };
    c.exact = [=](double x, double) {
      return detail::rest_with_radius(detail::aneurism_radius(x, r_base, dr, x1, x2, x3, x4));
    };
    return c;
  }
  if (name == "pulse_to_expansion") return detail::pulse_case(name, 0.65);
  if (name == "pulse_from_expansion") return detail::pulse_case(name, 0.15);
  if (name == "wave_damping") {
    if (!(friction >= 0.0) || !std::isfinite(friction)) throw ConfigError("friction coefficient must be >= 0");
    const double r0 = 4e-3, q_amp = 3.45e-7, period = 0.5;
    c.x_min = 0.0;
    c.x_max = 3.0;
    c.k = 1e8;
    c.rho = 1060.0;
    c.friction = friction;
    c.t_end = 25.0;
    c.snapshots = {25.0};
    const DampingRates d = damping_rates(friction, c.k, c.rho, r0, period);
    c.params = {{"R0", r0},     {"Q_amp", q_amp}, {"T_pulse", period}, {"C_f", friction},
                {"omega", d.omega}, {"c0", d.c0},     {"k_r", d.k_r},      {"k_i", d.k_i}};
    c.radius_profile = [=](double) { return r0; };
    c.initial = [=](double) { return detail::rest_with_radius(r0); };
    c.left = InflowDischarge{q_amp, d.omega};
    c.right = OutflowDampedWave{q_amp, d.omega, d.k_r, d.k_i};
    const double a0 = kPi * r0 * r0;
    c.exact = [=](double x, double t) {
      if (d.k_r * x > d.omega * t) return Conserved{a0, 0.0};
      // Q = Im(Q_amp e^{i(wt - kx)}) with k = k_r + i k_i; mass balance gives A - A0 = Im(k/w Q_amp e^{...}).
      const std::complex<double> kappa(d.k_r, d.k_i);
      const std::complex<double> wave = q_amp * std::exp(std::complex<double>(0.0, 1.0) * (d.omega * t - kappa * x));
      return Conserved{a0 + (kappa / d.omega * wave).imag(), wave.imag()};
    };
    return c;
  }
  throw UsageError("unknown case '" + name + "'");
}

/// Closed-form radius and velocity of the linear wave case.
inline Primitive exact_wave_solution(double x, double t, const CaseSpec& c) {
  if (c.name != "wave") throw UsageError("exact_wave_solution needs the wave case");
  const Conserved u = c.exact(x, t);
  return primitive_from_conserved(u.A, u.Q);
}

/// Damped discharge wave behind the front k_r x <= omega t, zero ahead of it.
inline double exact_damping_wave(double x, double t, const CaseSpec& c) {
  if (c.name != "wave_damping") throw UsageError("exact_damping_wave needs the wave_damping case");
  return damped_wave_discharge(x, t, c.param("Q_amp"), c.param("omega"), c.param("k_r"), c.param("k_i"));
}

struct NormPair {
  double l1 = 0.0;
  double linf = 0.0;
};

struct ErrorReport {
  NormPair A;
  NormPair Q;
  NormPair R;
  int n_cells = 0;
};

/// l1 = dx * sum |num - ref|, linf = max |num - ref|.
inline NormPair error_norm(std::span<const double> num, std::span<const double> ref, double dx) {
  if (num.size() != ref.size()) throw UsageError("error_norm: size mismatch");
  NormPair n;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double e = std::abs(num[i] - ref[i]);
    n.l1 += e;
    n.linf = std::max(n.linf, e);
  }
  n.l1 *= dx;
  return n;
}

/// Norms of the interior nodes of s against reference values at the same nodes.
inline ErrorReport error_norms(const FieldPair& s, const Grid& grid, const std::vector<Conserved>& ref) {
  if (ref.size() != static_cast<std::size_t>(grid.n_cells)) throw UsageError("reference has wrong length");
  std::vector<double> nA, nQ, nR, rA, rQ, rR;
  for (int j = 0; j < grid.n_cells; ++j) {
    const std::size_t i = grid.first() + static_cast<std::size_t>(j);
    nA.push_back(s.A[i]);
    nQ.push_back(s.Q[i]);
    nR.push_back(std::sqrt(s.A[i] / kPi));
    rA.push_back(ref[j].A);
    rQ.push_back(ref[j].Q);
    rR.push_back(std::sqrt(ref[j].A / kPi));
  }
  ErrorReport r;
  r.A = error_norm(nA, rA, grid.dx);
  r.Q = error_norm(nQ, rQ, grid.dx);
  r.R = error_norm(nR, rR, grid.dx);
  r.n_cells = grid.n_cells;
  return r;
}

inline ErrorReport error_norms(const FieldPair& s, const Grid& grid,
                               const std::function<Conserved(double)>& reference) {
  std::vector<Conserved> ref;
  ref.reserve(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) ref.push_back(reference(grid.node(j)));
  return error_norms(s, grid, ref);
}

struct ConvergenceRow {
  int n_cells = 0;
  double l1_A = 0.0;
  double l1_Q = 0.0;
  std::optional<double> order_A;  // empty on the first row or when undefined
  std::optional<double> order_Q;
};

struct ConvergenceTable {
  std::string case_name;
  double t = 0.0;
  std::string dt_rule;
  std::vector<ConvergenceRow> rows;
};

/// Observed order between two levels; empty when either error is zero or not finite.
inline std::optional<double> observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !std::isfinite(e_coarse) || !std::isfinite(e_fine))
    return std::nullopt;
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

/// Fills order columns of a table whose error columns are set.
inline void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0) {
      rows[i].order_A.reset();
      rows[i].order_Q.reset();
      continue;
    }
    rows[i].order_A = observed_order(rows[i - 1].l1_A, rows[i].l1_A, rows[i - 1].n_cells, rows[i].n_cells);
    rows[i].order_Q = observed_order(rows[i - 1].l1_Q, rows[i].l1_Q, rows[i - 1].n_cells, rows[i].n_cells);
  }
}

/// Refinement study against the case's exact solution at time t_eval. The time
/// step shrinks like dx^{5/3} relative to the coarsest level so spatial error dominates.
inline ConvergenceTable convergence_study(const CaseSpec& base, const std::vector<int>& levels,
                                          const SchemeConfig& config, double t_eval) {
  if (!base.exact) throw UsageError("case '" + base.name + "' has no exact solution");
  if (levels.empty()) throw UsageError("convergence study needs at least one level");
  if (!std::is_sorted(levels.begin(), levels.end())) throw UsageError("levels must be increasing");
  CaseSpec c = base;
  c.t_end = t_eval;
  c.snapshots.clear();
  ConvergenceTable table;
  table.case_name = base.name;
  table.t = t_eval;
  const double dx_ref = (c.x_max - c.x_min) / levels.front();
  for (int n : levels) {
    const Grid grid = build_grid(c.x_min, c.x_max, n);
    RunOptions opts;
    opts.dt_rule = DtRule::accuracy;
    opts.dx_ref = dx_ref;
    const RunResult res = run_until(c, grid, config, opts);
    table.dt_rule = res.dt_rule_note;
    const ErrorReport e = error_norms(res.state, grid, [&](double x) { return c.exact(x, t_eval); });
    table.rows.push_back({n, e.A.l1, e.Q.l1, std::nullopt, std::nullopt});
  }
  fill_orders(table.rows);
  return table;
}

/// Fine-grid solution used as a stand-in where no closed form exists.
class ReferenceSolution {
 public:
  ReferenceSolution(RunResult run) : run_(std::move(run)) {}

  const Grid& grid() const { return run_.grid; }
  const FieldPair& state() const { return run_.state; }
  double time() const { return run_.t; }

  /// Degree-5 Lagrange interpolation on the six nearest fine nodes; exact injection
  /// when x coincides with a fine node.
  Conserved sample(double x) const { return sample(run_.state, x); }

  Conserved sample(const FieldPair& s, double x) const {
    const Grid& g = run_.grid;
    const double pos = (x - g.x_min) / g.dx - 0.5 + g.ghost_width;  // fractional storage index
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) {
      const auto i = static_cast<std::size_t>(std::clamp(nearest, 0.0, static_cast<double>(g.size() - 1)));
      return {s.A[i], s.Q[i]};
    }
    long base = static_cast<long>(std::floor(pos)) - 2;
    base = std::clamp(base, 0L, static_cast<long>(g.size()) - 6);
    Conserved out{0.0, 0.0};
    for (int m = 0; m < 6; ++m) {
      double w = 1.0;
      for (int n = 0; n < 6; ++n)
        if (n != m) w *= (pos - static_cast<double>(base + n)) / static_cast<double>(m - n);
      out.A += w * s.A[static_cast<std::size_t>(base + m)];
      out.Q += w * s.Q[static_cast<std::size_t>(base + m)];
    }
    return out;
  }

  /// Reference values at the interior nodes of a coarse grid.
  std::vector<Conserved> restrict_to(const Grid& coarse) const { return restrict_to(run_.state, coarse); }

  std::vector<Conserved> restrict_to(const FieldPair& s, const Grid& coarse) const {
    std::vector<Conserved> out;
    out.reserve(static_cast<std::size_t>(coarse.n_cells));
    for (int j = 0; j < coarse.n_cells; ++j) out.push_back(sample(s, coarse.node(j)));
    return out;
  }

  const std::vector<Snapshot>& snapshots() const { return run_.snapshots; }

 private:
  RunResult run_;
};

inline ReferenceSolution reference_solution(const CaseSpec& c, int n_fine, const SchemeConfig& config) {
  return ReferenceSolution(run_until(c, build_grid(c.x_min, c.x_max, n_fine), config));
}

}  // namespace bfweno
