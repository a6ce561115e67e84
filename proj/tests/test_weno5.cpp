#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "bfweno/weno5.hpp"

using namespace bfweno;
using W = std::array<double, 5>;

namespace {

weno::ReconstructionResult<double> plus(const W& w, double eps = 1e-6) {
  return weno::reconstruct_plus<double>(std::span<const double, 5>(w), eps);
}

weno::ReconstructionResult<double> minus(const W& w, double eps = 1e-6) {
  return weno::reconstruct_minus<double>(std::span<const double, 5>(w), eps);
}

// Indicator from its integral definition: the quadratic whose cell averages over
// three unit cells match the stencil values, integrated over the target cell.
double indicator_oracle(const W& w, int k) {
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    const double xc = static_cast<double>(k + r - 2);
    m[r][0] = 1.0;
    m[r][1] = xc;
    m[r][2] = xc * xc + 1.0 / 12.0;
    m[r][3] = w[static_cast<std::size_t>(k + r)];
  }
  for (int p = 0; p < 3; ++p)
    for (int r = p + 1; r < 3; ++r) {
      const double f = m[r][p] / m[p][p];
      for (int c = p; c < 4; ++c) m[r][c] -= f * m[p][c];
    }
  double coef[3];
  for (int p = 2; p >= 0; --p) {
    double s = m[p][3];
    for (int c = p + 1; c < 3; ++c) s -= m[p][c] * coef[c];
    coef[p] = s / m[p][p];
  }
  const double b = coef[1], c2 = coef[2];
  // Gauss-Legendre, three points on [-1/2, 1/2]
  const double g[3] = {-0.5 * std::sqrt(0.6), 0.0, 0.5 * std::sqrt(0.6)};
  const double gw[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  double is = 0.0;
  for (int q = 0; q < 3; ++q) {
    const double d1 = b + 2.0 * c2 * g[q];
    is += gw[q] * (d1 * d1 + 4.0 * c2 * c2);
  }
  return is;
}

// Point value h(x_{j+1/2}) whose cell averages are the samples g(x_j).
struct SmoothCase {
  std::function<double(double)> g;
  std::function<double(double, double)> h;
};

double max_interface_error(const SmoothCase& f, double dx, bool use_minus) {
  double err = 0.0;
  for (double xf = 0.1; xf < 1.1; xf += 0.05) {
    W w{};
    for (int m = 0; m < 5; ++m) {
      const double offset = use_minus ? m - 1.5 : m - 2.5;
      w[static_cast<std::size_t>(m)] = f.g(xf + offset * dx);
    }
    const double v = use_minus ? minus(w).value : plus(w).value;
    err = std::max(err, std::abs(v - f.h(xf, dx)));
  }
  return err;
}

}  // namespace

TEST(SmoothnessIndicators, ConstantWindowIsZero) {
  const W w{3, 3, 3, 3, 3};
  for (double is : weno::smoothness_indicators<double>(std::span<const double, 5>(w))) EXPECT_EQ(is, 0.0);
}

TEST(SmoothnessIndicators, LinearWindowGivesSlopeSquared) {
  const double s = 0.7;
  const W w{0, s, 2 * s, 3 * s, 4 * s};
  for (double is : weno::smoothness_indicators<double>(std::span<const double, 5>(w))) EXPECT_NEAR(is, s * s, 1e-15);
}

TEST(SmoothnessIndicators, SpikeWindow) {
  const W w{0, 0, 1, 0, 0};
  const auto is = weno::smoothness_indicators<double>(std::span<const double, 5>(w));
  EXPECT_NEAR(is[0], 10.0 / 3.0, 1e-15);
  EXPECT_NEAR(is[0], indicator_oracle(w, 0), 1e-13);
}

TEST(SmoothnessIndicators, MatchIntegralDefinition) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    W w{};
    for (auto& v : w) v = u(rng);
    const auto is = weno::smoothness_indicators<double>(std::span<const double, 5>(w));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(is[static_cast<std::size_t>(k)], indicator_oracle(w, k), 1e-12);
  }
}

TEST(SmoothnessIndicators, DynamicWindowSizeChecked) {
  const std::vector<double> w{1, 2, 3, 4};
  EXPECT_THROW(weno::smoothness_indicators<double>(std::span<const double>(w)), UsageError);
  EXPECT_THROW(weno::reconstruct_plus<double>(std::span<const double>(w)), UsageError);
}

TEST(StencilTables, EachStencilIsExactForQuadratics) {
  // cell averages of x^p over unit cells centred at -2..2, interface at 1/2
  for (int p = 0; p <= 2; ++p) {
    auto avg = [p](double xc) {
      const double a = xc - 0.5, b = xc + 0.5;
      return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
    };
    for (int k = 0; k < 3; ++k) {
      double v = 0.0;
      for (int l = 0; l < 3; ++l)
        v += weno::kTables<double>.a_coeffs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] *
             avg(static_cast<double>(k + l - 2));
      EXPECT_NEAR(v, std::pow(0.5, p), 1e-14) << "p=" << p << " k=" << k;
    }
  }
}

TEST(NonlinearWeights, EqualIndicatorsGiveLinearWeights) {
  for (double s : {0.0, 1e-3, 2.0}) {
    const auto w = weno::nonlinear_weights<double>({s, s, s}, weno::kTables<double>, 1e-6);
    EXPECT_NEAR(w[0], 0.1, 1e-15);
    EXPECT_NEAR(w[1], 0.6, 1e-15);
    EXPECT_NEAR(w[2], 0.3, 1e-15);
  }
}

TEST(NonlinearWeights, RoughStencilSuppressed) {
  const auto w = weno::nonlinear_weights<double>({0.0, 0.0, 1.0}, weno::kTables<double>, 1e-6);
  EXPECT_LT(w[2], 1e-12);
  EXPECT_NEAR(w[0] / w[1], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(w[0] + w[1] + w[2], 1.0, 1e-15);
}

TEST(Reconstruction, ConstantWindow) {
  const W w{2.5, 2.5, 2.5, 2.5, 2.5};
  const auto r = plus(w);
  EXPECT_NEAR(r.value, 2.5, 1e-15);
  double s = 0.0;
  for (double c : r.combined_coeffs) s += c;
  EXPECT_NEAR(s, 1.0, 1e-15);
  EXPECT_NEAR(minus(w).value, 2.5, 1e-15);
}

TEST(Reconstruction, CoefficientsSumToOneForAnyWindow) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int n = 0; n < 500; ++n) {
    W w{};
    for (auto& v : w) v = u(rng);
    for (const auto& r : {plus(w), minus(w)}) {
      double s = 0.0;
      for (double c : r.combined_coeffs) s += c;
      EXPECT_NEAR(s, 1.0, 1e-14);
    }
  }
}

TEST(Reconstruction, LinearDataIsReproducedAtTheInterface) {
  const double dx = 0.1, xj = 0.3;
  W w{};
  for (int m = 0; m < 5; ++m) w[static_cast<std::size_t>(m)] = xj + (m - 2) * dx;
  EXPECT_NEAR(plus(w).value, xj + 0.5 * dx, 1e-15);
  W wm{};
  for (int m = 0; m < 5; ++m) wm[static_cast<std::size_t>(m)] = xj + (m - 1) * dx;
  EXPECT_NEAR(minus(wm).value, xj + 0.5 * dx, 1e-15);
}

TEST(Reconstruction, MirrorSymmetry) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    W w{};
    for (auto& v : w) v = u(rng);
    const W rev{w[4], w[3], w[2], w[1], w[0]};
    EXPECT_EQ(minus(w).value, plus(rev).value);
  }
}

TEST(Reconstruction, EnoPropertyAcrossAStep) {
  const W w{0, 0, 0, 1, 1};
  const auto r = plus(w);
  const double largest = std::max({r.weights[0], r.weights[1], r.weights[2]});
  EXPECT_LE(r.weights[1], 1e-6 * largest);
  EXPECT_LE(r.weights[2], 1e-6 * largest);
  EXPECT_NEAR(r.value, 0.0, 1e-10);
}

TEST(Reconstruction, TranslationInvariance) {
  const W w{0.1, 0.4, -0.3, 0.8, 0.2};
  W shifted = w;
  for (auto& v : shifted) v += 5.0;
  EXPECT_NEAR(plus(shifted).value, plus(w).value + 5.0, 1e-13);
}

TEST(Reconstruction, FifthOrderOnSmoothData) {
  const std::vector<SmoothCase> cases{
      {[](double x) { return std::sin(x); },
       [](double x, double dx) { return std::sin(x) * (0.5 * dx) / std::sin(0.5 * dx); }},
      {[](double x) { return std::exp(x); },
       [](double x, double dx) { return std::exp(x) * (0.5 * dx) / std::sinh(0.5 * dx); }},
  };
  for (const auto& f : cases) {
    for (bool use_minus : {false, true}) {
      std::vector<double> err;
      for (double dx : {0.04, 0.02, 0.01, 0.005}) err.push_back(max_interface_error(f, dx, use_minus));
      for (std::size_t i = 1; i < err.size(); ++i) {
        const double order = std::log2(err[i - 1] / err[i]);
        EXPECT_NEAR(order, 5.0, 0.3) << "level " << i << (use_minus ? " minus" : " plus");
      }
    }
  }
}

TEST(Reconstruction, WeightsApproachLinearOnRefinement) {
  auto dev = [](double dx) {
    W w{};
    for (int m = 0; m < 5; ++m) w[static_cast<std::size_t>(m)] = std::sin(0.4 + (m - 2) * dx);
    const auto r = plus(w, 1e-40);
    return std::abs(r.weights[1] - 0.6);
  };
  const double order = std::log2(dev(0.02) / dev(0.01));
  EXPECT_NEAR(order, 2.0, 0.3);
}
