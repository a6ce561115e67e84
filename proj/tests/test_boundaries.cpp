#include <gtest/gtest.h>

#include <cmath>

#include "bfweno/boundaries.hpp"

using namespace bfweno;

namespace {

FieldPair ramp(const Grid& g) {
  FieldPair s(g.size());
  for (std::size_t i = g.first(); i < g.last(); ++i) {
    s.A[i] = 1e-4 * (1.0 + g.at(i));
    s.Q[i] = 1e-6 * g.at(i);
  }
  return s;
}

}  // namespace

TEST(Transmissive, GhostsCopyAdjacentInterior) {
  const Grid g = build_grid(0.0, 1.0, 20);
  FieldPair s = ramp(g);
  fill_ghosts(s, g, Transmissive{}, Transmissive{}, 0.0);
  for (std::size_t i = 0; i < g.first(); ++i) {
    EXPECT_EQ(s.A[i], s.A[g.first()]);
    EXPECT_EQ(s.Q[i], s.Q[g.first()]);
  }
  for (std::size_t i = g.last(); i < g.size(); ++i) {
    EXPECT_EQ(s.A[i], s.A[g.last() - 1]);
    EXPECT_EQ(s.Q[i], s.Q[g.last() - 1]);
  }
}

TEST(InflowDischarge, SineInTime) {
  const Grid g = build_grid(0.0, 1.0, 20);
  const double w = 4 * kPi, qa = 3.45e-7;
  FieldPair s = ramp(g);
  fill_ghosts(s, g, InflowDischarge{qa, w}, Transmissive{}, 0.0);
  for (std::size_t i = 0; i < g.first(); ++i) EXPECT_EQ(s.Q[i], 0.0);
  fill_ghosts(s, g, InflowDischarge{qa, w}, Transmissive{}, 0.5 * kPi / w);
  for (std::size_t i = 0; i < g.first(); ++i) EXPECT_NEAR(s.Q[i], qa, 1e-20);
}

TEST(InflowDischarge, PeriodicInTime) {
  const Grid g = build_grid(0.0, 1.0, 20);
  const double w = 4 * kPi;
  FieldPair a = ramp(g), b = ramp(g);
  fill_ghosts(a, g, InflowDischarge{1.0, w}, Transmissive{}, 0.3);
  fill_ghosts(b, g, InflowDischarge{1.0, w}, Transmissive{}, 0.3 + 2 * kPi / w);
  for (std::size_t i = 0; i < g.first(); ++i) EXPECT_NEAR(a.Q[i], b.Q[i], 1e-13);
}

TEST(ImposedDischarge, AreaExtrapolatedLinearly) {
  const Grid g = build_grid(0.0, 1.0, 20);
  FieldPair s = ramp(g);
  fill_ghosts(s, g, InflowDischarge{1.0, 1.0}, OutflowDampedWave{1.0, 1.0, 1.0, 0.0}, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(s.A[i], 1e-4 * (1.0 + g.at(i)), 1e-18);
}

TEST(OutflowDampedWave, ZeroAheadOfTheFront) {
  const Grid g = build_grid(0.0, 3.0, 60);
  FieldPair s = ramp(g);
  const OutflowDampedWave bc{3.45e-7, 4 * kPi, 0.9149, -0.01};
  fill_ghosts(s, g, Transmissive{}, bc, 0.1);
  for (std::size_t i = g.last(); i < g.size(); ++i) EXPECT_EQ(s.Q[i], 0.0);
  fill_ghosts(s, g, Transmissive{}, bc, 10.0);
  for (std::size_t i = g.last(); i < g.size(); ++i)
    EXPECT_DOUBLE_EQ(s.Q[i], damped_wave_discharge(g.at(i), 10.0, bc.q_amp, bc.omega, bc.k_r, bc.k_i));
}

TEST(DampedWave, MatchesInflowAtOrigin) {
  const double w = 4 * kPi;
  for (double t : {0.1, 0.37, 2.0})
    EXPECT_DOUBLE_EQ(damped_wave_discharge(0.0, t, 2.0, w, 0.9, -0.1), 2.0 * std::sin(w * t));
}
