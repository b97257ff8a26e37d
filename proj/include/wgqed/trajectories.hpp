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

#pragma once

// Conditional dynamics under continuous monitoring of the waveguide outputs.
//
// Photon counting: per-channel Bernoulli clicks with probability
// eta gamma <J^dag J> dt; a click applies rho -> J rho J^dag / Tr, otherwise
// the no-click map
//   rho -> M rho M^dag + gamma dt sum (1 - eta) J rho J^dag,
//   M = 1 - (i H0 + gamma/2 sum J^dag J) dt,
// followed by renormalization.
//
// Homodyne detection: measurement increments
//   dY = sqrt(eta gamma) <J + J^dag> dt + dW,   I = dY / dt,
// with the default step in Kraus form
//   M = 1 - (i H0 + gamma/2 sum J^dag J) dt + sum sqrt(eta gamma) J dY
//       + 1/2 sum_{a,b} sqrt(eta_a eta_b) gamma J_a J_b (dY_a dY_b - delta_ab dt),
//   rho -> M rho M^dag + gamma dt sum (1 - eta) J rho J^dag.
// The Euler-Maruyama form of the same equation is available for comparison.

#include <array>
#include <cmath>
#include <string>

#include "wgqed/errors.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/model.hpp"
#include "wgqed/qmat.hpp"
#include "wgqed/record.hpp"
#include "wgqed/rng.hpp"

namespace wgqed {

enum class HomodyneScheme { Kraus, EulerMaruyama };

inline std::string_view to_string(HomodyneScheme s) { return s == HomodyneScheme::Kraus ? "kraus" : "euler"; }

inline constexpr double kMaxClickProbability = 0.1;

struct JumpStep {
  Mat4 rho;
  std::array<bool, 2> clicked{};
};

struct HomodyneStep {
  Mat4 rho;
  std::array<double, 2> current{};  // zero for unmonitored channels
};

namespace detail {

inline Mat4 no_click_kraus(const WaveguideModel& model) {
  constexpr cplx i{0.0, 1.0};
  return i * model.hamiltonian() + (0.5 * model.gamma()) * model.decay_generator();
}

}  // namespace detail

// Normalized J rho J^dag.
inline Mat4 apply_click(const Mat4& jump, const Mat4& rho) {
  Mat4 out = jump * rho * jump.adjoint();
  const double tr = out.trace().real();
  if (!(tr > 1e-300)) throw KernelState("click on a state annihilated by the jump operator");
  out *= 1.0 / tr;
  return out.hermitian_part();
}

inline Mat4 no_click_update(const WaveguideModel& model, const Mat4& rho, double dt) {
  const Mat4 m = Mat4::identity() - dt * detail::no_click_kraus(model);
  Mat4 out = m * rho * m.adjoint();
  for (Channel c : kChannels) {
    const double unmonitored = model.gamma() * (1.0 - model.efficiency(c)) * dt;
    if (unmonitored > 0.0) out += unmonitored * (model.jump(c) * rho * model.jump(c).adjoint());
  }
  renormalize(out);
  return out;
}

inline double click_probability(const WaveguideModel& model, Channel c, const Mat4& rho, double dt) {
  const Mat4& j = model.jump(c);
  return model.efficiency(c) * model.gamma() * expect(j.adjoint() * j, rho).real() * dt;
}

// One photon-counting step. Both channels consume one uniform draw each, in
// the order left, right; simultaneous clicks are applied in that order too.
inline JumpStep jump_step(const WaveguideModel& model, const Mat4& rho, double dt, RngStream& rng) {
  std::array<double, 2> p{};
  for (Channel c : kChannels) {
    p[index(c)] = click_probability(model, c, rho, dt);
    if (p[index(c)] >= kMaxClickProbability)
      throw DtTooLarge("click probability " + std::to_string(p[index(c)]) + " on " +
                       std::string(to_string(c)) + " channel");
  }
  JumpStep out;
  for (Channel c : kChannels) out.clicked[index(c)] = rng.uniform() < p[index(c)];

  if (out.clicked[0] || out.clicked[1]) {
    out.rho = rho;
    for (Channel c : kChannels)
      if (out.clicked[index(c)]) out.rho = apply_click(model.jump(c), out.rho);
  } else {
    out.rho = no_click_update(model, rho, dt);
  }
  return out;
}

// Pure-state evolution conditioned on no clicks at unit efficiency:
// exp(-gamma/2 sum J^dag J t) |psi0>, renormalized. The coherent part H0 is
// not included, so this is the exact no-click state only for omega_tilde = 0.
inline Ket no_jump_propagate(const WaveguideModel& model, const Ket& psi0, double t) {
  const auto es = herm_eig(model.decay_generator());
  const double g = model.gamma();
  const Mat4 u = apply_spectral(es, [&](double lambda) { return cplx{std::exp(-0.5 * g * lambda * t)}; });
  return (u * psi0).normalized();
}

inline HomodyneStep homodyne_step(const WaveguideModel& model, const Mat4& rho, double dt, RngStream& rng,
                                  HomodyneScheme scheme = HomodyneScheme::Kraus) {
  constexpr cplx i{0.0, 1.0};
  constexpr double kPositivityFloor = -1e-4;
  if (dt > max_step(model) * (1.0 + 1e-12))
    throw StepTooLarge("dt = " + std::to_string(dt) + " exceeds T1/100");

  const double g = model.gamma();
  const double sqdt = std::sqrt(dt);
  std::array<double, 2> dw{};
  for (Channel c : kChannels) dw[index(c)] = rng.normal() * sqdt;

  std::array<double, 2> strength{};  // sqrt(eta gamma)
  std::array<double, 2> dy{};
  HomodyneStep out;
  for (Channel c : kChannels) {
    const std::size_t k = index(c);
    const Mat4& j = model.jump(c);
    strength[k] = std::sqrt(model.efficiency(c) * g);
    const double signal = expect(j + j.adjoint(), rho).real();
    dy[k] = strength[k] * signal * dt + dw[k];
    out.current[k] = strength[k] > 0.0 ? dy[k] / dt : 0.0;
  }

  if (scheme == HomodyneScheme::Kraus) {
    Mat4 m = Mat4::identity() - dt * detail::no_click_kraus(model);
    for (Channel a : kChannels) {
      const std::size_t ka = index(a);
      if (strength[ka] == 0.0) continue;
      m += (strength[ka] * dy[ka]) * model.jump(a);
      for (Channel b : kChannels) {
        const std::size_t kb = index(b);
        if (strength[kb] == 0.0) continue;
        const double ito = dy[ka] * dy[kb] - (ka == kb ? dt : 0.0);
        m += (0.5 * strength[ka] * strength[kb] * ito) * (model.jump(a) * model.jump(b));
      }
    }
    out.rho = m * rho * m.adjoint();
    for (Channel c : kChannels) {
      const double unmonitored = (g - strength[index(c)] * strength[index(c)]) * dt;
      if (unmonitored > 0.0) out.rho += unmonitored * (model.jump(c) * rho * model.jump(c).adjoint());
    }
    renormalize(out.rho);
    return out;
  }

  Mat4 drho = (-i * dt) * commutator(model.hamiltonian(), rho);
  for (Channel c : kChannels) {
    const std::size_t k = index(c);
    const Mat4& j = model.jump(c);
    drho += (g * dt) * dissipator(j, rho);
    if (strength[k] == 0.0) continue;
    const Mat4 jr = j * rho;
    const Mat4 backaction = jr + jr.adjoint() - (jr + jr.adjoint()).trace() * rho;
    drho += (strength[k] * dw[k]) * backaction;
  }
  out.rho = rho + drho;
  renormalize(out.rho);
  if (const double lo = min_eigenvalue(out.rho); lo < kPositivityFloor)
    throw PositivityLost("minimum eigenvalue " + std::to_string(lo) + "; dt too coarse");
  return out;
}

struct TrajectoryConfig {
  DetectionMode mode = DetectionMode::Jump;
  double dt = 0.005;  // physical time, same units as 1/gamma
  double t_max = 6.0;
  NamedState initial = NamedState::GG;
  bool store_states = true;
  HomodyneScheme scheme = HomodyneScheme::Kraus;
};

// Deterministic in (model, config, seed).
inline TrajectoryRecord simulate_trajectory(const WaveguideModel& model, const TrajectoryConfig& config,
                                            std::uint64_t seed) {
  if (config.dt > max_step(model) * (1.0 + 1e-12))
    throw StepTooLarge("dt = " + std::to_string(config.dt) + " exceeds T1/100");
  const std::size_t n = step_count(config.dt, config.t_max);

  TrajectoryRecord rec;
  rec.mode = config.mode;
  rec.seed = seed;
  rec.gamma = model.gamma();
  rec.dt = config.dt;
  rec.times.reserve(n + 1);
  rec.observables.reserve(n + 1);
  if (config.store_states) rec.states.reserve(n + 1);

  RngStream rng(seed);
  Mat4 rho = named_projector(config.initial);
  auto push = [&](double t) {
    rec.times.push_back(t);
    rec.observables.push_back(observables(rho));
    if (config.store_states) rec.states.push_back(rho);
  };
  push(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    try {
      if (config.mode == DetectionMode::Jump) {
        JumpStep s = jump_step(model, rho, config.dt, rng);
        rho = s.rho;
        for (Channel c : kChannels)
          if (s.clicked[index(c)]) rec.clicks.push_back({t, c});
      } else {
        HomodyneStep s = homodyne_step(model, rho, config.dt, rng, config.scheme);
        rho = s.rho;
        for (Channel c : kChannels)
          if (model.efficiency(c) > 0.0) rec.currents.push_back({t, c, s.current[index(c)]});
      }
      push(t);
    } catch (const TrajectoryError&) {
      throw;
    } catch (const Error& e) {
      throw TrajectoryError(t, e.what());
    }
  }
  return rec;
}

}  // namespace wgqed
