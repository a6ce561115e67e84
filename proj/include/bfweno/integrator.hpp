#pragma once

// Semi-discrete right-hand side and third-order SSP Runge-Kutta time stepping.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bfweno/boundaries.hpp"
#include "bfweno/case_spec.hpp"
#include "bfweno/char_flux.hpp"
#include "bfweno/errors.hpp"
#include "bfweno/mesh_state.hpp"
#include "bfweno/wb_source.hpp"
#include "bfweno/weno5.hpp"

namespace bfweno {

struct RhsEvaluation {
  std::vector<double> dA_dt;  // interior nodes only
  std::vector<double> dQ_dt;
  double dt_max = 0.0;        // CFL-admissible step from this state
  double max_speed = 0.0;     // max |u| + c
};

/// Largest |u| + c over the interior.
inline double max_signal_speed(const FieldPair& s, const Grid& grid, double k, double rho) {
  double m = 0.0;
  for (std::size_t i = grid.first(); i < grid.last(); ++i) {
    const double A = s.A[i];
    if (!(A > 0.0)) throw StateError("non-positive A in time-step scan", static_cast<std::ptrdiff_t>(i) - grid.ghost_width, std::nan(""));
    m = std::max(m, std::abs(s.Q[i] / A) + wave_speed(A, k, rho));
  }
  return m;
}

inline double compute_dt(const FieldPair& s, const Grid& grid, double k, double rho, double cfl) {
  const double speed = max_signal_speed(s, grid, k, rho);
  if (!(speed > 0.0) || !std::isfinite(speed)) throw ConfigError("maximum signal speed is not positive");
  return cfl * grid.dx / speed;
}

/// Evaluates dU/dt = -(F_{j+1/2} - F_{j-1/2})/dx + S_j. Owns its scratch buffers and
/// the frozen operator of the most recent evaluation.
class RhsEvaluator {
 public:
  RhsEvaluator(Grid grid, const VesselGeometry& geo, SchemeConfig config,
               BoundaryCondition left = Transmissive{}, BoundaryCondition right = Transmissive{},
               double friction = 0.0)
      : grid_(grid), geo_(&geo), config_(config), left_(left), right_(right), friction_(friction) {
    config_.validate();
    if (geo.A0.size() != grid_.size()) throw ConfigError("geometry does not match grid");
    const std::size_t n = grid_.size();
    f0_.resize(n);
    f1_.resize(n);
    v0_.resize(n);
    v1_.resize(n);
    face_A_.resize(static_cast<std::size_t>(grid_.n_cells + 1));
    face_Q_.resize(face_A_.size());
    op_.resize(grid_);
    out_.dA_dt.resize(static_cast<std::size_t>(grid_.n_cells));
    out_.dQ_dt.resize(out_.dA_dt.size());
  }

  const Grid& grid() const { return grid_; }
  const SchemeConfig& config() const { return config_; }
  const FrozenOperator& frozen_operator() const { return op_; }
  /// Physical numerical flux at faces 0..n_cells of the last evaluation.
  std::span<const double> face_flux_A() const { return face_A_; }
  std::span<const double> face_flux_Q() const { return face_Q_; }

  /// Fills the ghost nodes of s for time t and evaluates the tendencies.
  const RhsEvaluation& operator()(FieldPair& s, double t) {
    fill_ghosts(s, grid_, left_, right_, t);
    validate(s, t);
    flux_divergence(s, t);
    if (config_.mode == Mode::well_balanced) {
      op_.stamp = state_stamp(s);
      add_balanced_source(s, *geo_, grid_, op_, out_.dA_dt, out_.dQ_dt, zero_, pressure_);
    } else {
      add_pointwise_source(s, *geo_, grid_, out_.dQ_dt);
    }
    add_friction_source(s, grid_, friction_, out_.dQ_dt);
    out_.max_speed = max_signal_speed(s, grid_, geo_->k, geo_->rho);
    out_.dt_max = config_.cfl * grid_.dx / out_.max_speed;
    return out_;
  }

 private:
  void validate(const FieldPair& s, double t) const {
    if (s.size() != grid_.size()) throw InternalError("state does not match grid");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!(s.A[i] > 0.0) || !std::isfinite(s.A[i]) || !std::isfinite(s.Q[i]))
        throw StateError("invalid state A = " + std::to_string(s.A[i]) + ", Q = " + std::to_string(s.Q[i]),
                         static_cast<std::ptrdiff_t>(i) - grid_.ghost_width, t);
    }
  }

  void flux_divergence(const FieldPair& s, double t) {
    const double k = geo_->k;
    const double rho = geo_->rho;
    const double pc = geo_->pressure_coeff();
    const std::size_t n = grid_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 f = physical_flux(s.A[i], s.Q[i], pc);
      const Vec2 v = split_variable(s.A[i], s.Q[i], geo_->A0[i], config_.mode);
      f0_[i] = f[0];
      f1_[i] = f[1];
      v0_[i] = v[0];
      v1_[i] = v[1];
    }
    const GlobalAlphas alpha = global_alphas(s, grid_, k, rho, t);
    const double eps = config_.eps_weno;

    for (std::size_t face = 0; face < face_A_.size(); ++face) {
      const std::size_t L = grid_.first() - 1 + face;
      const EigenSystem eig =
          eigen_system(0.5 * (s.A[L] + s.A[L + 1]), 0.5 * (s.Q[L] + s.Q[L + 1]), k, rho);
      InterfaceStencil& st = op_.faces[face];
      st.right = eig.right;
      st.left = eig.left;
      Vec2 hat{};
      for (int field = 0; field < 2; ++field) {
        const double l0 = eig.left[field][0];
        const double l1 = eig.left[field][1];
        const double a = alpha[field];
        std::array<double, 6> fp{};
        std::array<double, 6> fm{};
        for (int m = 0; m < 6; ++m) {
          const std::size_t node = L - 2 + static_cast<std::size_t>(m);
          const double fc = l0 * f0_[node] + l1 * f1_[node];
          const double vc = l0 * v0_[node] + l1 * v1_[node];
          const auto [p, q] = modified_lf_split(fc, vc, a);
          fp[m] = p;
          fm[m] = q;
        }
        const auto rp = weno::reconstruct_plus<double>(std::span<const double, 5>(fp.data(), 5), eps);
        const auto rm = weno::reconstruct_minus<double>(std::span<const double, 5>(fm.data() + 1, 5), eps);
        st.plus[field] = rp.combined_coeffs;
        st.minus[field] = rm.combined_coeffs;
        hat[field] = rp.value + rm.value;
      }
      const Vec2 phys = eig.right * hat;
      face_A_[face] = phys[0];
      face_Q_[face] = phys[1];
    }
    for (int j = 0; j < grid_.n_cells; ++j) {
      const std::size_t r = static_cast<std::size_t>(j + 1);
      const std::size_t l = static_cast<std::size_t>(j);
      out_.dA_dt[j] = -((face_A_[r] - face_A_[l]) / grid_.dx);
      out_.dQ_dt[j] = -((face_Q_[r] - face_Q_[l]) / grid_.dx);
    }
  }

  Grid grid_;
  const VesselGeometry* geo_;
  SchemeConfig config_;
  BoundaryCondition left_;
  BoundaryCondition right_;
  double friction_;

  std::vector<double> f0_, f1_, v0_, v1_;
  std::vector<double> face_A_, face_Q_;
  std::vector<double> zero_, pressure_;
  FrozenOperator op_;
  RhsEvaluation out_;
};

inline RhsEvaluation semidiscrete_rhs(FieldPair& s, const VesselGeometry& geo, const Grid& grid,
                                      const SchemeConfig& config, BoundaryCondition left,
                                      BoundaryCondition right, double friction, double t) {
  RhsEvaluator eval(grid, geo, config, left, right, friction);
  return eval(s, t);
}

/// Shu-Osher coefficients: stage s forms (1 - w_s) U^n + w_s (U^{(s-1)} + dt F(U^{(s-1)})).
struct SspRk3 {
  static constexpr std::array<double, 3> stage_weight{1.0, 0.25, 2.0 / 3.0};
  static constexpr std::array<double, 3> base_weight{0.0, 0.75, 1.0 / 3.0};
  static constexpr std::array<double, 3> stage_time{0.0, 1.0, 0.5};  // fraction of dt
};

/// One SSP-RK3 step over the slots [begin, end) of u.
/// rhs(FieldPair&, double t) must return an object with dA_dt/dQ_dt indexed from begin.
/// Each stage is written as U^n + w (stage - U^n), so a zero tendency leaves U^n unchanged bit for bit.
template <class Rhs>
void rk3_step(FieldPair& u, std::size_t begin, std::size_t end, double t, double dt, Rhs&& rhs,
              FieldPair& un_buffer) {
  un_buffer.A.assign(u.A.begin(), u.A.end());
  un_buffer.Q.assign(u.Q.begin(), u.Q.end());
  for (int stage = 0; stage < 3; ++stage) {
    const double ts = t + SspRk3::stage_time[stage] * dt;
    const double w = SspRk3::stage_weight[stage];
    try {
      const auto& f = rhs(u, ts);
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t j = i - begin;
        const double a = u.A[i] + dt * f.dA_dt[j];
        const double q = u.Q[i] + dt * f.dQ_dt[j];
        u.A[i] = un_buffer.A[i] + w * (a - un_buffer.A[i]);
        u.Q[i] = un_buffer.Q[i] + w * (q - un_buffer.Q[i]);
      }
    } catch (const StateError& e) {
      throw StateError(std::string(e.what()) + " in RK stage " + std::to_string(stage + 1), e.node(), e.time());
    }
  }
}

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double max_speed = 0.0;
};

enum class DtRule { cfl, accuracy };

struct RunOptions {
  DtRule dt_rule = DtRule::cfl;
  /// Reference spacing for DtRule::accuracy: dt = cfl dx / s * (dx / dx_ref)^{2/3}.
  double dx_ref = 0.0;
  bool keep_log = false;
  /// Called after every step with the current state.
  std::function<void(const FieldPair&, double)> observer;
};

struct Snapshot {
  double t = 0.0;
  FieldPair state;
};

struct RunResult {
  Grid grid;
  VesselGeometry geometry;
  FieldPair state;
  double t = 0.0;
  long steps = 0;
  std::vector<Snapshot> snapshots;
  std::vector<StepRecord> log;
  std::string dt_rule_note;
};

inline FieldPair initial_state(const CaseSpec& c, const Grid& grid) {
  FieldPair s(grid.size());
  for (std::size_t i = grid.first(); i < grid.last(); ++i) {
    const Conserved u0 = c.initial(grid.at(i));
    s.A[i] = u0.A;
    s.Q[i] = u0.Q;
  }
  fill_ghosts(s, grid, c.left, c.right, 0.0);
  return s;
}

/// Marches the case from t = 0 to t_end, clipping steps to land on every snapshot
/// time and on t_end exactly.
inline RunResult run_until(const CaseSpec& c, const Grid& grid, const SchemeConfig& config,
                           const RunOptions& opts = {}) {
  if (!(c.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  RunResult res;
  res.grid = grid;
  res.geometry = sample_geometry(c.radius_profile, grid, c.k, c.rho);
  res.state = initial_state(c, grid);
  if (opts.dt_rule == DtRule::accuracy) {
    if (!(opts.dx_ref > 0.0)) throw ConfigError("accuracy time-step rule needs a reference spacing");
    res.dt_rule_note = "dt = cfl*dx/max(|u|+c) * (dx/" + std::to_string(opts.dx_ref) + ")^(2/3)";
  } else {
    res.dt_rule_note = "dt = cfl*dx/max(|u|+c)";
  }

  std::vector<double> stops = c.snapshots;
  std::sort(stops.begin(), stops.end());
  stops.erase(std::remove_if(stops.begin(), stops.end(), [&](double s) { return s < 0.0 || s > c.t_end; }),
              stops.end());
  std::size_t next = 0;
  while (next < stops.size() && stops[next] <= 0.0) {
    res.snapshots.push_back({0.0, res.state});
    ++next;
  }

  RhsEvaluator eval(grid, res.geometry, config, c.left, c.right, c.friction);
  const double dt_scale =
      opts.dt_rule == DtRule::accuracy ? std::pow(grid.dx / opts.dx_ref, 2.0 / 3.0) : 1.0;
  FieldPair un;
  double t = 0.0;
  while (t < c.t_end) {
    const double target = next < stops.size() ? stops[next] : c.t_end;
    const double speed = max_signal_speed(res.state, grid, c.k, c.rho);
    double dt = config.cfl * grid.dx / speed * dt_scale;
    bool land = false;
    if (t + dt >= target * (1.0 - 1e-14)) {
      dt = target - t;
      land = true;
    }
    try {
      rk3_step(res.state, grid.first(), grid.last(), t, dt, eval, un);
    } catch (const StateError& e) {
      throw StateError(std::string(e.what()) + " at step " + std::to_string(res.steps + 1), e.node(), e.time());
    }
    t = land ? target : t + dt;
    ++res.steps;
    for (std::size_t i = grid.first(); i < grid.last(); ++i) {
      if (!std::isfinite(res.state.A[i]) || !std::isfinite(res.state.Q[i]) || !(res.state.A[i] > 0.0))
        throw StateError("blow-up at step " + std::to_string(res.steps),
                         static_cast<std::ptrdiff_t>(i) - grid.ghost_width, t);
    }
    if (opts.keep_log) res.log.push_back({res.steps, t, dt, speed});
    if (opts.observer) opts.observer(res.state, t);
    while (next < stops.size() && stops[next] <= t) {
      fill_ghosts(res.state, grid, c.left, c.right, t);
      res.snapshots.push_back({t, res.state});
      ++next;
    }
  }
  fill_ghosts(res.state, grid, c.left, c.right, t);
  res.t = t;
  return res;
}

}  // namespace bfweno
