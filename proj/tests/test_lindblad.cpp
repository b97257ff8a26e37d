// Copyright 2026 The wgqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/oracles.hpp"

namespace wgqed {
namespace {

// With no detuning the generator is diagonal in the collective-operator
// eigenbasis: coherence (a, b) decays at rate gamma * (lambda_a - lambda_b)^2.
Mat4 dephased_exact(const WaveguideModel& m, const Mat4& rho0, double t) {
  const auto es = herm_eig(m.jump(Channel::Left));
  const Mat4& u = es.vectors;
  Mat4 in_basis = u.adjoint() * rho0 * u;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const double d = es.values[a] - es.values[b];
      in_basis(a, b) *= std::exp(-m.gamma() * d * d * t);
    }
  return u * in_basis * u.adjoint();
}

TEST(Liouvillian, DarkStatesAreStationary) {
  const auto even = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  EXPECT_LT(steady_state_residual(even, named_projector(NamedState::PsiMinus)), 1e-14);
  EXPECT_LT(steady_state_residual(even, named_projector(NamedState::PhiMinus)), 1e-14);
  const auto odd = build_model(1.0, 0.0, KdParity::Odd, 1.0, 1.0);
  EXPECT_LT(steady_state_residual(odd, named_projector(NamedState::PsiPlus)), 1e-14);
}

TEST(Liouvillian, MixedSteadyStateIsStationary) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  EXPECT_LT(steady_state_residual(m, steady_state_rho().mat), 1e-12);
}

TEST(Liouvillian, GroundStateIsDriven) {
  // The collective operator contains raising parts, so |gg> is not stationary.
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  EXPECT_GT(steady_state_residual(m, named_projector(NamedState::GG)), 0.1);
}

TEST(Liouvillian, MaximallyMixedIsStationary) {
  // Hermitian jump operators make the generator unital.
  for (KdParity p : {KdParity::Even, KdParity::Odd}) {
    const auto m = build_model(1.0, 0.7, p, 1.0, 1.0);
    const Mat4 d = liouvillian_apply(m, 0.25 * Mat4::identity());
    EXPECT_LT(d.max_abs(), 1e-15);
  }
}

TEST(Liouvillian, PreservesTraceAndHermiticity) {
  std::mt19937_64 g(11);
  const auto m = build_model(0.7, 1.3, KdParity::Odd, 0.4, 0.9);
  for (int i = 0; i < 20; ++i) {
    const Mat4 rho = testing::random_density(g, 4);
    const Mat4 d = liouvillian_apply(m, rho);
    EXPECT_LT(std::abs(d.trace()), 1e-13);
    EXPECT_LT(d.hermiticity_error(), 1e-13);
  }
}

TEST(Liouvillian, IndependentOfDetectionEfficiency) {
  std::mt19937_64 g(3);
  const Mat4 rho = testing::random_density(g, 3);
  const auto a = build_model(1.0, 0.5, KdParity::Even, 1.0, 1.0);
  const auto b = build_model(1.0, 0.5, KdParity::Even, 0.0, 0.3);
  EXPECT_LT((liouvillian_apply(a, rho) - liouvillian_apply(b, rho)).max_abs(), 1e-15);
}

TEST(Evolve, MatchesDephasingSolution) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  std::mt19937_64 g(5);
  const Mat4 rho0 = testing::random_density(g, 4);
  const auto ev = evolve(m, rho0, 0.01, 2.0);
  ASSERT_EQ(ev.states.size(), 201u);
  // RK4 global error bound for the fastest rate, 8 gamma, at dt = 0.01
  for (std::size_t k = 0; k < ev.states.size(); k += 20)
    EXPECT_LT((ev.states[k].mat - dephased_exact(m, rho0, ev.states[k].time)).max_abs(), 1e-6)
        << "t = " << ev.states[k].time;
}

TEST(Evolve, GroundStateRelaxesToMixedSteadyState) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  const auto ev = evolve(m, named_projector(NamedState::GG), 0.01, 15.0);
  EXPECT_LT(trace_distance(ev.states.back().mat, steady_state_rho().mat), 1e-4);
}

TEST(Evolve, UnconditionalConcurrenceVanishes) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  const auto ev = evolve(m, named_projector(NamedState::GG), 0.01, 15.0);
  EXPECT_NEAR(concurrence(ev.states.back().mat), concurrence(steady_state_rho().mat), 1e-6);
}

TEST(Evolve, DarkStateStaysPut) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  const Mat4 dark = named_projector(NamedState::PsiMinus);
  const auto ev = evolve(m, dark, 0.01, 5.0);
  for (const auto& s : ev.states) EXPECT_LT(trace_distance(s.mat, dark), 1e-9);
}

TEST(Evolve, StaysPhysicalWithDetuning) {
  const auto m = build_model(2.0, 3.0, KdParity::Odd, 1.0, 1.0);
  const auto ev = evolve(m, named_projector(NamedState::EE), 0.005, 3.0);
  for (const auto& s : ev.states) EXPECT_TRUE(is_density_matrix(s.mat));
  EXPECT_LT(ev.max_trace_correction, 1e-12);
}

TEST(Evolve, RejectsOversizedStep) {
  const auto m = build_model(2.0, 0.0, KdParity::Even, 1.0, 1.0);
  EXPECT_THROW(evolve(m, named_projector(NamedState::GG), 0.006, 1.0), StepTooLarge);
  EXPECT_NO_THROW(evolve(m, named_projector(NamedState::GG), 0.005, 0.1));
}

TEST(Evolve, RejectsNonDensityInput) {
  const auto m = build_model(1.0, 0.0, KdParity::Even, 1.0, 1.0);
  EXPECT_THROW(evolve(m, 2.0 * named_projector(NamedState::GG), 0.01, 1.0), BadParam);
}

TEST(Rk4, FourthOrderConvergence) {
  const auto m = build_model(1.0, 2.0, KdParity::Even, 1.0, 1.0);
  const Mat4 rho0 = named_projector(NamedState::GE);
  auto run = [&](double dt) {
    Mat4 rho = rho0;
    for (std::size_t k = 0, n = step_count(dt, 1.0); k < n; ++k) rho = rk4_step(m, rho, dt);
    return rho;
  };
  const Mat4 ref = run(0.1 / 64);
  const double e1 = (run(0.1) - ref).max_abs();
  const double e2 = (run(0.05) - ref).max_abs();
  EXPECT_NEAR(e1 / e2, 16.0, 2.0);
}

TEST(StepCount, RoundsToNearestWholeStep) {
  EXPECT_EQ(step_count(0.01, 1.0), 100u);
  EXPECT_EQ(step_count(0.1, 0.3), 3u);
  EXPECT_EQ(step_count(0.5, 0.0), 0u);
  EXPECT_THROW(step_count(0.0, 1.0), BadParam);
}

TEST(Renormalize, ReportsCorrectionAndRejectsZeroTrace) {
  Mat4 rho = 1.5 * named_projector(NamedState::GG);
  EXPECT_DOUBLE_EQ(renormalize(rho), 0.5);
  EXPECT_DOUBLE_EQ(rho.trace().real(), 1.0);
  Mat4 zero{};
  EXPECT_THROW(renormalize(zero), PositivityLost);
}

}  // namespace
}  // namespace wgqed
