#pragma once

// Uniform 1D mesh with ghost layers, nodal state storage and vessel geometry.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bfweno/errors.hpp"

namespace bfweno {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrtPi = 1.7724538509055160273;  // sqrt(pi)

/// Ghost layer width for the fifth-order scheme (stencil half-width r = 2, plus one).
inline constexpr int kGhostWidth = 3;

/// Uniform cell-centred grid. Storage index i maps to interior node j = i - ghost_width.
struct Grid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 0;
  double dx = 0.0;
  int ghost_width = kGhostWidth;

  std::size_t size() const { return static_cast<std::size_t>(n_cells + 2 * ghost_width); }
  std::size_t first() const { return static_cast<std::size_t>(ghost_width); }
  std::size_t last() const { return static_cast<std::size_t>(ghost_width + n_cells); }  // one past

  /// Coordinate of interior node j (negative j or j >= n_cells address ghosts).
  double node(int j) const { return x_min + (static_cast<double>(j) + 0.5) * dx; }
  /// Coordinate of storage slot i.
  double at(std::size_t i) const { return node(static_cast<int>(i) - ghost_width); }
};

inline Grid build_grid(double x_min, double x_max, int n_cells, int ghost_width = kGhostWidth) {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("grid extent must be positive and finite");
  if (ghost_width < 1) throw ConfigError("ghost width must be at least 1");
  if (n_cells < 2 * ghost_width)
    throw ConfigError("grid needs at least " + std::to_string(2 * ghost_width) + " cells, got " +
                      std::to_string(n_cells));
  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.ghost_width = ghost_width;
  g.dx = (x_max - x_min) / n_cells;
  return g;
}

/// Conserved variables (A, Q) at every storage slot, ghosts included.
struct FieldPair {
  std::vector<double> A;
  std::vector<double> Q;

  FieldPair() = default;
  explicit FieldPair(std::size_t n) : A(n, 0.0), Q(n, 0.0) {}

  std::size_t size() const { return A.size(); }
};

/// Rest cross-section A0 and its derived powers, plus wall stiffness and density.
struct VesselGeometry {
  std::vector<double> A0;
  std::vector<double> sqrtA0;
  std::vector<double> A0_32;
  double k = 0.0;
  double rho = 0.0;

  /// k / (rho sqrt(pi)), the prefactor of the source term.
  double source_coeff() const { return k / (rho * kSqrtPi); }
  /// k / (3 rho sqrt(pi)), the prefactor of the pressure flux.
  double pressure_coeff() const { return k / (3.0 * rho * kSqrtPi); }
};

/// Builds A0 = pi R0(x)^2 at interior nodes and extends it by copying the boundary value.
inline VesselGeometry sample_geometry(const std::function<double(double)>& radius_profile,
                                      const Grid& grid, double k, double rho) {
  if (!(k > 0.0) || !(rho > 0.0)) throw ConfigError("stiffness and density must be positive");
  VesselGeometry geo;
  geo.k = k;
  geo.rho = rho;
  const std::size_t n = grid.size();
  geo.A0.assign(n, 0.0);
  for (std::size_t i = grid.first(); i < grid.last(); ++i) {
    const double r = radius_profile(grid.at(i));
    if (!(r > 0.0) || !std::isfinite(r))
      throw ConfigError("radius profile must be positive, got " + std::to_string(r) +
                        " at x = " + std::to_string(grid.at(i)));
    geo.A0[i] = kPi * r * r;
  }
  for (std::size_t i = 0; i < grid.first(); ++i) geo.A0[i] = geo.A0[grid.first()];
  for (std::size_t i = grid.last(); i < n; ++i) geo.A0[i] = geo.A0[grid.last() - 1];

  geo.sqrtA0.resize(n);
  geo.A0_32.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    geo.sqrtA0[i] = std::sqrt(geo.A0[i]);
    geo.A0_32[i] = geo.A0[i] * geo.sqrtA0[i];
  }
  return geo;
}

enum class Mode { well_balanced, non_well_balanced };

inline std::string to_string(Mode m) {
  return m == Mode::well_balanced ? "wb" : "nonwb";
}

struct SchemeConfig {
  int r = 2;
  double eps_weno = 1e-6;
  double cfl = 0.6;
  Mode mode = Mode::well_balanced;

  void validate() const {
    if (r != 2) throw ConfigError("only r = 2 (fifth order) is supported");
    if (!(eps_weno > 0.0)) throw ConfigError("eps_weno must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  }
};

struct Primitive {
  double R = 0.0;  // radius
  double u = 0.0;  // velocity
};

inline Primitive primitive_from_conserved(double A, double Q, std::ptrdiff_t node = -1,
                                          double time = std::nan("")) {
  if (!(A > 0.0)) throw StateError("non-positive cross-section A = " + std::to_string(A), node, time);
  return {std::sqrt(A / kPi), Q / A};
}

struct Conserved {
  double A = 0.0;
  double Q = 0.0;
};

inline Conserved conserved_from_primitive(double R, double u) {
  const double A = kPi * R * R;
  return {A, A * u};
}

}  // namespace bfweno
