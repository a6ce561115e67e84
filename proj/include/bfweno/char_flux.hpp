#pragma once

// Physical flux of the blood-flow system, eigen-structure of its Jacobian and the
// Lax-Friedrichs splitting applied in local characteristic variables.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

#include "bfweno/errors.hpp"
#include "bfweno/mesh_state.hpp"

namespace bfweno {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>;  // row-major

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

/// f(U) = (Q, Q^2/A + k/(3 rho sqrt(pi)) A^{3/2}).
/// A^{3/2} is formed as A*sqrt(A), the same way VesselGeometry::A0_32 is, so the
/// pressure flux at A = A0 matches the source grid function bit for bit.
inline Vec2 physical_flux(double A, double Q, double pressure_coeff) {
  return {Q, Q * Q / A + pressure_coeff * (A * std::sqrt(A))};
}

inline Vec2 physical_flux(double A, double Q, double k, double rho) {
  if (!(A > 0.0)) throw StateError("physical flux needs A > 0", -1, std::nan(""));
  return physical_flux(A, Q, k / (3.0 * rho * kSqrtPi));
}

/// Pulse wave speed c = sqrt(k sqrt(A) / (2 rho sqrt(pi))).
inline double wave_speed(double A, double k, double rho) {
  return std::sqrt(k * std::sqrt(A) / (2.0 * rho * kSqrtPi));
}

struct EigenSystem {
  double lambda1 = 0.0;  // u - c
  double lambda2 = 0.0;  // u + c
  Mat2 right{};          // columns are right eigenvectors (1, lambda_i)
  Mat2 left{};           // inverse of right
};

inline EigenSystem eigen_system(double A, double Q, double k, double rho) {
  if (!(A > 0.0)) throw StateError("eigen decomposition needs A > 0", -1, std::nan(""));
  const double u = Q / A;
  const double c = wave_speed(A, k, rho);
  EigenSystem e;
  e.lambda1 = u - c;
  e.lambda2 = u + c;
  const double det = e.lambda2 - e.lambda1;
  if (!(det > 0.0)) throw InternalError("degenerate eigen system");
  e.right = Mat2{Vec2{1.0, 1.0}, Vec2{e.lambda1, e.lambda2}};
  const double inv = 1.0 / det;
  e.left = Mat2{Vec2{e.lambda2 * inv, -inv}, Vec2{-e.lambda1 * inv, inv}};
  return e;
}

/// Lax-Friedrichs viscosity per characteristic field.
struct GlobalAlphas {
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  double operator[](int field) const { return field == 0 ? alpha1 : alpha2; }
};

/// Maximum of |lambda_i| over the interior nodes.
inline GlobalAlphas global_alphas(const FieldPair& s, const Grid& grid, double k, double rho,
                                  double time = std::nan("")) {
  GlobalAlphas out;
  for (std::size_t i = grid.first(); i < grid.last(); ++i) {
    const double A = s.A[i];
    if (!(A > 0.0) || !std::isfinite(s.Q[i]))
      throw StateError("invalid state in wave-speed scan, A = " + std::to_string(A),
                       static_cast<std::ptrdiff_t>(i) - grid.ghost_width, time);
    const double u = s.Q[i] / A;
    const double c = wave_speed(A, k, rho);
    out.alpha1 = std::max(out.alpha1, std::abs(u - c));
    out.alpha2 = std::max(out.alpha2, std::abs(u + c));
  }
  return out;
}

/// f^{+-} = (f_char +- alpha v_char) / 2 for one characteristic component. In
/// well-balanced mode v_char is projected from (A - A0, Q), otherwise from (A, Q).
inline std::pair<double, double> modified_lf_split(double f_char, double v_char, double alpha) {
  const double visc = alpha * v_char;
  return {0.5 * (f_char + visc), 0.5 * (f_char - visc)};
}

/// The variable carried by the splitting viscosity.
inline Vec2 split_variable(double A, double Q, double A0, Mode mode) {
  return mode == Mode::well_balanced ? Vec2{A - A0, Q} : Vec2{A, Q};
}

}  // namespace bfweno
