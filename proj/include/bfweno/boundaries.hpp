#pragma once

#include <cmath>
#include <cstddef>
#include <variant>

#include "bfweno/mesh_state.hpp"

namespace bfweno {

/// Zeroth-order extrapolation of (A, Q).
struct Transmissive {};

/// Imposed discharge Q_amp sin(omega t); A extrapolated linearly.
struct InflowDischarge {
  double q_amp = 0.0;
  double omega = 1.0;
};

/// Imposed discharge from the damped travelling wave
///   Q = Q_amp sin(omega t - k_r x) exp(k_i x)  behind the front k_r x <= omega t, else 0,
/// evaluated at the ghost coordinates; A extrapolated linearly.
struct OutflowDampedWave {
  double q_amp = 0.0;
  double omega = 1.0;
  double k_r = 0.0;
  double k_i = 0.0;
};

using BoundaryCondition = std::variant<Transmissive, InflowDischarge, OutflowDampedWave>;

inline double damped_wave_discharge(double x, double t, double q_amp, double omega, double k_r,
                                    double k_i) {
  if (k_r * x > omega * t) return 0.0;
  return q_amp * std::sin(omega * t - k_r * x) * std::exp(k_i * x);
}

namespace detail {

inline double ghost_discharge(const BoundaryCondition& bc, double x, double t, double extrapolated) {
  struct Visitor {
    double x, t, q;
    double operator()(const Transmissive&) const { return q; }
    double operator()(const InflowDischarge& b) const { return b.q_amp * std::sin(b.omega * t); }
    double operator()(const OutflowDampedWave& b) const {
      return damped_wave_discharge(x, t, b.q_amp, b.omega, b.k_r, b.k_i);
    }
  };
  return std::visit(Visitor{x, t, extrapolated}, bc);
}

}  // namespace detail

inline void fill_ghosts(FieldPair& s, const Grid& grid, const BoundaryCondition& left,
                        const BoundaryCondition& right, double t) {
  const std::size_t lo = grid.first();
  const std::size_t hi = grid.last() - 1;
  const bool flat_left = std::holds_alternative<Transmissive>(left);
  const bool flat_right = std::holds_alternative<Transmissive>(right);
  for (std::size_t i = 0; i < lo; ++i) {
    s.A[i] = flat_left ? s.A[lo] : s.A[lo] + static_cast<double>(lo - i) * (s.A[lo] - s.A[lo + 1]);
    s.Q[i] = detail::ghost_discharge(left, grid.at(i), t, s.Q[lo]);
  }
  for (std::size_t i = hi + 1; i < grid.size(); ++i) {
    s.A[i] = flat_right ? s.A[hi] : s.A[hi] + static_cast<double>(i - hi) * (s.A[hi] - s.A[hi - 1]);
    s.Q[i] = detail::ghost_discharge(right, grid.at(i), t, s.Q[hi]);
  }
}

}  // namespace bfweno
