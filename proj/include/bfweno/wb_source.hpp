#pragma once

// Source-term discretization.
//
// The well-balanced route freezes the WENO coefficients produced while
// reconstructing the split flux and applies that same linear difference
// operator to the source grid functions sqrt(A0) and A0^{3/2}. At rest
// (A = A0, Q = 0) the flux divergence and the source then share one linear
// operator and cancel.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "bfweno/char_flux.hpp"
#include "bfweno/errors.hpp"
#include "bfweno/mesh_state.hpp"
#include "bfweno/weno5.hpp"

namespace bfweno {

/// Coefficients frozen at one interface x_{j+1/2}: eigen-matrices of the local
/// characteristic decomposition and, per field, the combined WENO coefficients of
/// the plus part (nodes j-2..j+2) and the minus part (nodes j-1..j+3).
struct InterfaceStencil {
  Mat2 right{};
  Mat2 left{};
  std::array<std::array<double, weno::kWindow>, 2> plus{};
  std::array<std::array<double, weno::kWindow>, 2> minus{};
};

using OperatorRow = std::array<double, 7>;  // nodes j-3..j+3

/// Derivative row for node j of one characteristic field, from the plus/minus
/// coefficient rows at x_{j+1/2} ("right") and x_{j-1/2} ("left").
inline OperatorRow assemble_frozen_operator(const std::array<double, 5>& plus_right,
                                            const std::array<double, 5>& minus_right,
                                            const std::array<double, 5>& plus_left,
                                            const std::array<double, 5>& minus_left, double dx) {
  OperatorRow beta{};
  for (int m = 0; m < 5; ++m) {
    beta[1 + m] += plus_right[m];
    beta[2 + m] += minus_right[m];
    beta[0 + m] -= plus_left[m];
    beta[1 + m] -= minus_left[m];
  }
  const double s = 0.5 / dx;
  for (auto& b : beta) b *= s;
  return beta;
}

/// FNV-1a over the raw bytes of a state, used to tie a frozen operator to the state
/// it was built from.
inline std::uint64_t state_stamp(const FieldPair& s) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::vector<double>& v) {
    for (double d : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, sizeof bits);
      h ^= bits;
      h *= 1099511628211ull;
    }
  };
  mix(s.A);
  mix(s.Q);
  return h;
}

/// The linear operator D_f captured from one flux evaluation. faces[i] is the
/// interface between interior nodes i-1 and i, so there are n_cells + 1 faces.
struct FrozenOperator {
  double dx = 0.0;
  int n_cells = 0;
  int ghost_width = kGhostWidth;
  std::uint64_t stamp = 0;
  std::vector<InterfaceStencil> faces;

  void resize(const Grid& grid) {
    dx = grid.dx;
    n_cells = grid.n_cells;
    ghost_width = grid.ghost_width;
    faces.resize(static_cast<std::size_t>(n_cells + 1));
  }

  /// Scalar derivative row of one characteristic field at interior node j.
  OperatorRow row(int j, int field) const {
    const auto& r = faces[static_cast<std::size_t>(j + 1)];
    const auto& l = faces[static_cast<std::size_t>(j)];
    return assemble_frozen_operator(r.plus[field], r.minus[field], l.plus[field], l.minus[field], dx);
  }

  /// Frozen numerical flux of the vector grid function G at face i.
  Vec2 face_flux(std::size_t face, std::span<const double> g0, std::span<const double> g1) const {
    const auto& f = faces[face];
    // storage index of the node left of the face
    const std::size_t left_node = static_cast<std::size_t>(ghost_width) - 1 + face;
    Vec2 acc{0.0, 0.0};
    for (int field = 0; field < 2; ++field) {
      const double l0 = f.left[field][0];
      const double l1 = f.left[field][1];
      double plus = 0.0;
      double minus = 0.0;
      for (int m = 0; m < weno::kWindow; ++m) {
        const std::size_t ip = left_node - 2 + m;
        plus += f.plus[field][m] * (0.5 * (l0 * g0[ip] + l1 * g1[ip]));
      }
      // summed downwind-first, the order reconstruct_minus uses
      for (int m = weno::kWindow - 1; m >= 0; --m) {
        const std::size_t im = left_node - 1 + m;
        minus += f.minus[field][m] * (0.5 * (l0 * g0[im] + l1 * g1[im]));
      }
      acc[field] = plus + minus;
    }
    return f.right * acc;
  }

  /// D_f(G) at every interior node. g0/g1 are full storage arrays (ghosts included).
  std::vector<Vec2> apply(std::span<const double> g0, std::span<const double> g1) const {
    std::vector<Vec2> out(static_cast<std::size_t>(n_cells));
    Vec2 prev = face_flux(0, g0, g1);
    for (int j = 0; j < n_cells; ++j) {
      const Vec2 next = face_flux(static_cast<std::size_t>(j + 1), g0, g1);
      out[j] = {(next[0] - prev[0]) / dx, (next[1] - prev[1]) / dx};
      prev = next;
    }
    return out;
  }
};

/// Adds k/(rho sqrt(pi)) (A - A0) D_f(0, sqrt(A0)) + D_f(0, k/(3 rho sqrt(pi)) A0^{3/2})
/// to the tendencies. D_f acts on vectors, so its mass component is kept as well;
/// that component vanishes at rest and is a truncation-size term elsewhere.
inline void add_balanced_source(const FieldPair& s, const VesselGeometry& geo, const Grid& grid,
                                const FrozenOperator& op, std::span<double> dA, std::span<double> dQ,
                                std::vector<double>& scratch_zero, std::vector<double>& scratch_p) {
  if (op.n_cells != grid.n_cells || op.faces.size() != static_cast<std::size_t>(grid.n_cells + 1))
    throw InternalError("frozen operator does not match the grid");
  if (op.stamp != state_stamp(s))
    throw InternalError("frozen operator was built from a different state");

  const std::size_t n = grid.size();
  scratch_zero.assign(n, 0.0);
  scratch_p.resize(n);
  const double pc = geo.pressure_coeff();
  const double sc = geo.source_coeff();
  for (std::size_t i = 0; i < n; ++i) scratch_p[i] = pc * geo.A0_32[i];

  Vec2 prev1 = op.face_flux(0, scratch_zero, geo.sqrtA0);
  Vec2 prev2 = op.face_flux(0, scratch_zero, scratch_p);
  for (int j = 0; j < grid.n_cells; ++j) {
    const std::size_t face = static_cast<std::size_t>(j + 1);
    const Vec2 next1 = op.face_flux(face, scratch_zero, geo.sqrtA0);
    const Vec2 next2 = op.face_flux(face, scratch_zero, scratch_p);
    const std::size_t i = grid.first() + static_cast<std::size_t>(j);
    const double pref = sc * (s.A[i] - geo.A0[i]);
    for (int c = 0; c < 2; ++c) {
      const double d1 = (next1[c] - prev1[c]) / grid.dx;
      const double d2 = (next2[c] - prev2[c]) / grid.dx;
      const double v = pref * d1 + d2;
      (c == 0 ? dA : dQ)[static_cast<std::size_t>(j)] += v;
    }
    prev1 = next1;
    prev2 = next2;
  }
}

inline std::vector<Vec2> balanced_source(const FieldPair& s, const VesselGeometry& geo,
                                         const Grid& grid, const FrozenOperator& op) {
  std::vector<double> dA(static_cast<std::size_t>(grid.n_cells), 0.0);
  std::vector<double> dQ(dA.size(), 0.0);
  std::vector<double> z, p;
  add_balanced_source(s, geo, grid, op, dA, dQ, z, p);
  std::vector<Vec2> out(dA.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = {dA[j], dQ[j]};
  return out;
}

/// Sixth-order central difference of sqrt(A0) at storage slot i.
inline double central_derivative(std::span<const double> g, std::size_t i, double dx) {
  return (45.0 * (g[i + 1] - g[i - 1]) - 9.0 * (g[i + 2] - g[i - 2]) + (g[i + 3] - g[i - 3])) / (60.0 * dx);
}

/// Non-balanced source: k A / (rho sqrt(pi)) times a central difference of sqrt(A0).
inline void add_pointwise_source(const FieldPair& s, const VesselGeometry& geo, const Grid& grid,
                                 std::span<double> dQ) {
  const double sc = geo.source_coeff();
  for (int j = 0; j < grid.n_cells; ++j) {
    const std::size_t i = grid.first() + static_cast<std::size_t>(j);
    dQ[static_cast<std::size_t>(j)] += sc * s.A[i] * central_derivative(geo.sqrtA0, i, grid.dx);
  }
}

inline std::vector<Vec2> pointwise_source_nonwb(const FieldPair& s, const VesselGeometry& geo,
                                                const Grid& grid) {
  std::vector<double> dQ(static_cast<std::size_t>(grid.n_cells), 0.0);
  add_pointwise_source(s, geo, grid, dQ);
  std::vector<Vec2> out(dQ.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = {0.0, dQ[j]};
  return out;
}

/// Linear friction -C_f Q / A in the momentum equation.
inline void add_friction_source(const FieldPair& s, const Grid& grid, double friction,
                                std::span<double> dQ) {
  if (friction == 0.0) return;
  for (int j = 0; j < grid.n_cells; ++j) {
    const std::size_t i = grid.first() + static_cast<std::size_t>(j);
    dQ[static_cast<std::size_t>(j)] -= friction * s.Q[i] / s.A[i];
  }
}

inline std::vector<Vec2> friction_source(const FieldPair& s, const Grid& grid, double friction) {
  std::vector<double> dQ(static_cast<std::size_t>(grid.n_cells), 0.0);
  add_friction_source(s, grid, friction, dQ);
  std::vector<Vec2> out(dQ.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = {0.0, dQ[j]};
  return out;
}

}  // namespace bfweno
