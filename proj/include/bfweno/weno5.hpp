#pragma once

// Fifth-order WENO reconstruction of upwind interface values (Jiang-Shu weights).
//
// Besides the reconstructed value each call returns the effective linear
// coefficients it applied to the window. The well-balanced source discretization
// reuses those coefficients on other grid functions.

#include <array>
#include <concepts>
#include <cstddef>
#include <span>

#include "bfweno/errors.hpp"

namespace bfweno::weno {

inline constexpr int kOrderR = 2;
inline constexpr int kWindow = 2 * kOrderR + 1;   // 5 values per reconstruction
inline constexpr int kStencils = kOrderR + 1;     // 3 candidate stencils

/// Constant tables for r = 2. Row k holds a_{k,l}: the third-order interface value of
/// stencil k, which covers window slots k..k+2.
template <std::floating_point Real>
struct StencilTables {
  std::array<std::array<Real, kStencils>, kStencils> a_coeffs{{
      {Real(2) / 6, Real(-7) / 6, Real(11) / 6},
      {Real(-1) / 6, Real(5) / 6, Real(2) / 6},
      {Real(2) / 6, Real(5) / 6, Real(-1) / 6},
  }};
  std::array<Real, kStencils> linear_weights{Real(1) / 10, Real(6) / 10, Real(3) / 10};
};

template <std::floating_point Real>
inline constexpr StencilTables<Real> kTables{};

template <std::floating_point Real>
struct ReconstructionResult {
  Real value{};
  std::array<Real, kStencils> weights{};
  std::array<Real, kWindow> combined_coeffs{};
};

/// Jiang-Shu indicators for the three stencils of a left-biased window.
template <std::floating_point Real>
constexpr std::array<Real, kStencils> smoothness_indicators(std::span<const Real, kWindow> w) {
  constexpr Real c13 = Real(13) / 12;
  constexpr Real c14 = Real(1) / 4;
  const Real d0 = w[0] - 2 * w[1] + w[2];
  const Real d1 = w[1] - 2 * w[2] + w[3];
  const Real d2 = w[2] - 2 * w[3] + w[4];
  const Real s0 = w[0] - 4 * w[1] + 3 * w[2];
  const Real s1 = w[1] - w[3];
  const Real s2 = 3 * w[2] - 4 * w[3] + w[4];
  return {c13 * d0 * d0 + c14 * s0 * s0, c13 * d1 * d1 + c14 * s1 * s1,
          c13 * d2 * d2 + c14 * s2 * s2};
}

template <std::floating_point Real>
std::array<Real, kStencils> smoothness_indicators(std::span<const Real> w) {
  if (w.size() != kWindow) throw UsageError("WENO5 window must hold exactly 5 values");
  return smoothness_indicators<Real>(std::span<const Real, kWindow>(w.data(), kWindow));
}

template <std::floating_point Real>
constexpr std::array<Real, kStencils> nonlinear_weights(const std::array<Real, kStencils>& is,
                                                        const StencilTables<Real>& tables,
                                                        Real eps) {
  std::array<Real, kStencils> alpha{};
  Real sum = 0;
  for (int k = 0; k < kStencils; ++k) {
    const Real d = eps + is[k];
    alpha[k] = tables.linear_weights[k] / (d * d);
    sum += alpha[k];
  }
  for (auto& a : alpha) a /= sum;
  return alpha;
}

/// Value at x_{j+1/2} from the window (v_{j-2}, ..., v_{j+2}), upwind-biased to the left.
template <std::floating_point Real>
constexpr ReconstructionResult<Real> reconstruct_plus(std::span<const Real, kWindow> w,
                                                      Real eps = Real(1e-6),
                                                      const StencilTables<Real>& tables = kTables<Real>) {
  ReconstructionResult<Real> out;
  out.weights = nonlinear_weights(smoothness_indicators<Real>(w), tables, eps);
  for (int k = 0; k < kStencils; ++k)
    for (int l = 0; l < kStencils; ++l) out.combined_coeffs[k + l] += out.weights[k] * tables.a_coeffs[k][l];
  Real v = 0;
  for (int m = 0; m < kWindow; ++m) v += out.combined_coeffs[m] * w[m];
  out.value = v;
  return out;
}

/// Value at x_{j+1/2} from the window (v_{j-1}, ..., v_{j+3}), mirror image of reconstruct_plus.
/// Coefficients are reported in the caller's window order.
template <std::floating_point Real>
constexpr ReconstructionResult<Real> reconstruct_minus(std::span<const Real, kWindow> w,
                                                       Real eps = Real(1e-6),
                                                       const StencilTables<Real>& tables = kTables<Real>) {
  const std::array<Real, kWindow> rev{w[4], w[3], w[2], w[1], w[0]};
  auto out = reconstruct_plus<Real>(std::span<const Real, kWindow>(rev), eps, tables);
  std::array<Real, kWindow> c{};
  for (int m = 0; m < kWindow; ++m) c[m] = out.combined_coeffs[kWindow - 1 - m];
  out.combined_coeffs = c;
  return out;
}

template <std::floating_point Real>
ReconstructionResult<Real> reconstruct_plus(std::span<const Real> w, Real eps = Real(1e-6)) {
  if (w.size() != kWindow) throw UsageError("WENO5 window must hold exactly 5 values");
  return reconstruct_plus<Real>(std::span<const Real, kWindow>(w.data(), kWindow), eps);
}

template <std::floating_point Real>
ReconstructionResult<Real> reconstruct_minus(std::span<const Real> w, Real eps = Real(1e-6)) {
  if (w.size() != kWindow) throw UsageError("WENO5 window must hold exactly 5 values");
  return reconstruct_minus<Real>(std::span<const Real, kWindow>(w.data(), kWindow), eps);
}

}  // namespace bfweno::weno
