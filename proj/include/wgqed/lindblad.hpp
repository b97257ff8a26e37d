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

// Unconditional master equation
//   d rho/dt = -i[H0, rho] + gamma sum_lambda D[J_lambda] rho,
//   D[O] rho = O rho O^dag - {O^dag O, rho}/2
// integrated with fixed-step classical RK4.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/model.hpp"
#include "wgqed/qmat.hpp"

namespace wgqed {

struct DensityMatrix {
  Mat4 mat;
  double time = 0.0;
};

inline bool is_density_matrix(const Mat4& rho, double psd_tolerance = kPsdTolerance) {
  if (!rho.all_finite()) return false;
  if (rho.hermiticity_error() > kHermitianTolerance) return false;
  if (std::abs(rho.trace() - 1.0) > 1e-9) return false;
  return min_eigenvalue(rho) >= -psd_tolerance;
}

// Symmetrize and rescale to unit trace. Returns |Tr - 1| before rescaling.
inline double renormalize(Mat4& rho) {
  rho = rho.hermitian_part();
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw PositivityLost("non-positive trace " + std::to_string(tr));
  rho *= 1.0 / tr;
  return std::abs(tr - 1.0);
}

// O rho O^dag - {O^dag O, rho}/2
inline Mat4 dissipator(const Mat4& op, const Mat4& rho) {
  const Mat4 od = op.adjoint();
  const Mat4 odo = od * op;
  return op * rho * od - 0.5 * anticommutator(odo, rho);
}

inline Mat4 liouvillian_apply(const WaveguideModel& model, const Mat4& rho) {
  constexpr cplx i{0.0, 1.0};
  Mat4 out = -i * commutator(model.hamiltonian(), rho);
  for (Channel c : kChannels) out += model.gamma() * dissipator(model.jump(c), rho);
  return out;
}

// Max-abs entry of the generator applied to rho; zero for a stationary state.
inline double steady_state_residual(const WaveguideModel& model, const Mat4& rho) {
  return liouvillian_apply(model, rho).max_abs();
}

// Largest step accepted by the deterministic and diffusive integrators.
inline double max_step(const WaveguideModel& model) { return 0.01 / model.gamma(); }

// Grid size for [0, t_max] with step dt; t_max is rounded to a whole number of steps.
inline std::size_t step_count(double dt, double t_max) {
  if (!(dt > 0.0)) throw BadParam("dt must be positive");
  if (!(t_max >= 0.0)) throw BadParam("t_max must be nonnegative");
  return static_cast<std::size_t>(std::llround(t_max / dt));
}

struct Evolution {
  std::vector<DensityMatrix> states;  // t = 0, dt, ..., t_max
  double max_trace_correction = 0.0;  // largest |Tr - 1| removed by renormalization
};

inline Mat4 rk4_step(const WaveguideModel& model, const Mat4& rho, double dt) {
  const Mat4 k1 = liouvillian_apply(model, rho);
  const Mat4 k2 = liouvillian_apply(model, rho + (0.5 * dt) * k1);
  const Mat4 k3 = liouvillian_apply(model, rho + (0.5 * dt) * k2);
  const Mat4 k4 = liouvillian_apply(model, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline Evolution evolve(const WaveguideModel& model, const Mat4& rho0, double dt, double t_max) {
  constexpr double kPositivityFloor = -1e-6;
  if (dt > max_step(model) * (1.0 + 1e-12))
    throw StepTooLarge("dt = " + std::to_string(dt) + " exceeds T1/100");
  if (!is_density_matrix(rho0)) throw BadParam("initial state is not a density matrix");
  const std::size_t n = step_count(dt, t_max);

  Evolution out;
  out.states.reserve(n + 1);
  Mat4 rho = rho0;
  out.states.push_back({rho, 0.0});
  for (std::size_t k = 1; k <= n; ++k) {
    rho = rk4_step(model, rho, dt);
    out.max_trace_correction = std::max(out.max_trace_correction, renormalize(rho));
    const double t = static_cast<double>(k) * dt;
    if (const double lo = min_eigenvalue(rho); lo < kPositivityFloor)
      throw PositivityLost("t = " + std::to_string(t) + ": minimum eigenvalue " + std::to_string(lo));
    out.states.push_back({rho, t});
  }
  return out;
}

}  // namespace wgqed
