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

// Closed-form reference results for the waveguide model. None of these call
// into the integrators; they are used as ground truth for them.

#include <cmath>
#include <span>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/model.hpp"
#include "wgqed/qmat.hpp"

namespace wgqed {

// State conditioned on no clicks, starting from |g1 g2> (even parity,
// omega_tilde = 0, unit efficiency):
//   [(1 + e^{-2 gamma t}) |gg> - (1 - e^{-2 gamma t}) |ee>] / sqrt(2 (1 + e^{-4 gamma t}))
inline Ket no_click_state(double gamma, double t) {
  if (!(t >= 0.0)) throw BadParam("t must be nonnegative");
  const double a = std::exp(-2.0 * gamma * t);
  const double norm = std::sqrt(2.0 * (1.0 + a * a));
  return Ket{(1.0 + a) / norm, 0.0, 0.0, -(1.0 - a) / norm};
}

// Concurrence of no_click_state: (1 - e^{-4 gamma t}) / (1 + e^{-4 gamma t}).
inline double no_click_concurrence(double gamma, double t) {
  if (!(t >= 0.0)) throw BadParam("t must be nonnegative");
  const double a = std::exp(-4.0 * gamma * t);
  return (1.0 - a) / (1.0 + a);
}

// Ensemble-averaged concurrence of homodyne trajectories from |g1 g2>:
//   1/2 - (1/5) e^{-3 gamma t} - (3/10) e^{-8 gamma t}.
inline double homodyne_mean_concurrence(double gamma, double t) {
  if (!(t >= 0.0)) throw BadParam("t must be nonnegative");
  return 0.5 - 0.2 * std::exp(-3.0 * gamma * t) - 0.3 * std::exp(-8.0 * gamma * t);
}

// As above, but refuses configurations outside the formula's scope: start in
// |g1 g2>, even parity, right port homodyned at unit efficiency, left port
// unmonitored.
inline double homodyne_mean_concurrence(const WaveguideModel& model, NamedState initial, double t) {
  if (initial != NamedState::GG) throw BadParam("average-concurrence formula holds only from |g1 g2>");
  if (model.parity() != KdParity::Even) throw BadParam("average-concurrence formula holds only for even kd");
  if (model.efficiency(Channel::Right) != 1.0 || model.efficiency(Channel::Left) != 0.0)
    throw BadParam("average-concurrence formula needs eta_r = 1 and eta_l = 0");
  return homodyne_mean_concurrence(model.gamma(), t);
}

enum class OracleKind { NoClickConcurrence, HomodyneMeanConcurrence };

struct OracleCurve {
  std::vector<double> times;
  std::vector<double> values;
  OracleKind kind = OracleKind::NoClickConcurrence;
};

inline OracleCurve make_oracle_curve(OracleKind kind, double gamma, std::span<const double> times) {
  OracleCurve c{{times.begin(), times.end()}, {}, kind};
  c.values.reserve(times.size());
  for (double t : times)
    c.values.push_back(kind == OracleKind::NoClickConcurrence ? no_click_concurrence(gamma, t)
                                                              : homodyne_mean_concurrence(gamma, t));
  return c;
}

// Image label of a click J_{+-} |s>, normalized and up to a global phase:
//   J|gg> ~ |eg> +- |ge>,  J|ge> ~ |ee> +- |gg>,
//   J|eg> ~ |gg> +- |ee>,  J|ee> ~ |ge> +- |eg>,
// and the Bell cycles Phi+ <-> Psi+ (even), Phi- <-> Psi- (odd).
inline NamedState jump_map(KdParity parity, NamedState s) {
  const bool even = parity == KdParity::Even;
  switch (s) {
    case NamedState::GG: return even ? NamedState::PhiPlus : NamedState::PhiMinus;
    case NamedState::GE: return even ? NamedState::PsiPlus : NamedState::PsiMinus;
    case NamedState::EG: return even ? NamedState::PsiPlus : NamedState::PsiMinus;
    case NamedState::EE: return even ? NamedState::PhiPlus : NamedState::PhiMinus;
    case NamedState::PhiPlus:
      if (even) return NamedState::PsiPlus;
      break;
    case NamedState::PsiPlus:
      if (even) return NamedState::PhiPlus;
      break;
    case NamedState::PhiMinus:
      if (!even) return NamedState::PsiMinus;
      break;
    case NamedState::PsiMinus:
      if (!even) return NamedState::PhiMinus;
      break;
    default:
      throw BadParam("jump table covers only basis and Bell states");
  }
  throw KernelState(std::string(to_string(s)) + " is annihilated by the " + std::string(to_string(parity)) +
                    "-parity jump operator");
}

// 1/2 |Psi-><Psi-| + 1/4 (|phi+><phi+| + |phi-><phi-|)
inline DensityMatrix steady_state_rho() {
  Mat4 rho = 0.5 * named_projector(NamedState::PsiMinus) + 0.25 * named_projector(NamedState::BrightPlus) +
             0.25 * named_projector(NamedState::BrightMinus);
  return {rho, 0.0};
}

}  // namespace wgqed
