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

// Effective two-qubit model of emitters coupled through a 1D waveguide.
//
// Basis ordering is fixed throughout the library:
//   |0> = |g1 g2>, |1> = |g1 e2>, |2> = |e1 g2>, |3> = |e1 e2>
// i.e. index = 2 * (qubit 1 excited) + (qubit 2 excited).

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "wgqed/errors.hpp"
#include "wgqed/qmat.hpp"

namespace wgqed {

// Phase kd between the emitters: even multiple of pi selects J1 + J2,
// odd multiple selects J1 - J2.
enum class KdParity { Even, Odd };

enum class Channel { Left = 0, Right = 1 };

inline constexpr std::array<Channel, 2> kChannels{Channel::Left, Channel::Right};

inline constexpr std::size_t index(Channel c) { return static_cast<std::size_t>(c); }

enum class NamedState {
  GG,
  GE,
  EG,
  EE,
  PsiPlus,      // (|gg> + |ee>)/sqrt2
  PsiMinus,     // (|gg> - |ee>)/sqrt2
  PhiPlus,      // (|ge> + |eg>)/sqrt2
  PhiMinus,     // (|ge> - |eg>)/sqrt2
  BrightPlus,   // [|ee> + |gg> + (|ge> + |eg>)]/2, J1+J2 eigenstate, eigenvalue +sqrt2
  BrightMinus,  // [|ee> + |gg> - (|ge> + |eg>)]/2, J1+J2 eigenstate, eigenvalue -sqrt2
};

inline constexpr std::array<NamedState, 10> kAllNamedStates{
    NamedState::GG,       NamedState::GE,       NamedState::EG,      NamedState::EE,
    NamedState::PsiPlus,  NamedState::PsiMinus, NamedState::PhiPlus, NamedState::PhiMinus,
    NamedState::BrightPlus, NamedState::BrightMinus};

inline constexpr std::array<NamedState, 4> kBellStates{NamedState::PsiPlus, NamedState::PsiMinus,
                                                        NamedState::PhiPlus, NamedState::PhiMinus};

inline std::string_view to_string(NamedState s) {
  switch (s) {
    case NamedState::GG: return "gg";
    case NamedState::GE: return "ge";
    case NamedState::EG: return "eg";
    case NamedState::EE: return "ee";
    case NamedState::PsiPlus: return "psi_plus";
    case NamedState::PsiMinus: return "psi_minus";
    case NamedState::PhiPlus: return "phi_plus";
    case NamedState::PhiMinus: return "phi_minus";
    case NamedState::BrightPlus: return "bright_plus";
    case NamedState::BrightMinus: return "bright_minus";
  }
  return "?";
}

inline std::string_view to_string(KdParity p) { return p == KdParity::Even ? "even" : "odd"; }

inline std::string_view to_string(Channel c) { return c == Channel::Left ? "left" : "right"; }

inline Ket named_state(NamedState label) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (label) {
    case NamedState::GG: return Ket{1.0, 0.0, 0.0, 0.0};
    case NamedState::GE: return Ket{0.0, 1.0, 0.0, 0.0};
    case NamedState::EG: return Ket{0.0, 0.0, 1.0, 0.0};
    case NamedState::EE: return Ket{0.0, 0.0, 0.0, 1.0};
    case NamedState::PsiPlus: return Ket{h, 0.0, 0.0, h};
    case NamedState::PsiMinus: return Ket{h, 0.0, 0.0, -h};
    case NamedState::PhiPlus: return Ket{0.0, h, h, 0.0};
    case NamedState::PhiMinus: return Ket{0.0, h, -h, 0.0};
    case NamedState::BrightPlus: return Ket{0.5, 0.5, 0.5, 0.5};
    case NamedState::BrightMinus: return Ket{0.5, -0.5, -0.5, 0.5};
  }
  throw BadParam("unknown named state");
}

inline Mat4 named_projector(NamedState label) { return Mat4::projector(named_state(label)); }

// Single-emitter operators lifted to the two-qubit space.
namespace emitter {

inline Mat4 lowering(int which) {
  return which == 1 ? kron(pauli::lower(), Mat2::identity()) : kron(Mat2::identity(), pauli::lower());
}

inline Mat4 sigma_z(int which) {
  return which == 1 ? kron(pauli::z(), Mat2::identity()) : kron(Mat2::identity(), pauli::z());
}

// (sigma_j + sigma_j^dag) / sqrt2
inline Mat4 quadrature(int which) {
  const Mat4 s = lowering(which);
  return (1.0 / std::sqrt(2.0)) * (s + s.adjoint());
}

}  // namespace emitter

struct JumpChannel {
  Channel channel;
  Mat4 op;
  double efficiency;
};

// Immutable after construction; use build_model().
class WaveguideModel {
 public:
  double gamma() const noexcept { return gamma_; }
  double omega_tilde() const noexcept { return omega_tilde_; }
  KdParity parity() const noexcept { return parity_; }
  double efficiency(Channel c) const noexcept { return eta_[index(c)]; }
  const Mat4& jump(Channel c) const noexcept { return jump_[index(c)]; }
  const Mat4& hamiltonian() const noexcept { return hamiltonian_; }
  // sum over channels of J^dag J
  const Mat4& decay_generator() const noexcept { return decay_generator_; }

  friend WaveguideModel build_model(double gamma, double omega_tilde, KdParity parity, double eta_l,
                                    double eta_r);

 private:
  WaveguideModel() = default;

  double gamma_ = 1.0;
  double omega_tilde_ = 0.0;
  KdParity parity_ = KdParity::Even;
  std::array<double, 2> eta_{1.0, 1.0};
  std::array<Mat4, 2> jump_;
  Mat4 hamiltonian_;
  Mat4 decay_generator_;
};

// Collective operator J1 +- J2 for the given parity.
inline Mat4 collective_operator(KdParity parity) {
  const Mat4 j1 = emitter::quadrature(1);
  const Mat4 j2 = emitter::quadrature(2);
  return parity == KdParity::Even ? j1 + j2 : j1 - j2;
}

inline WaveguideModel build_model(double gamma, double omega_tilde, KdParity parity, double eta_l,
                                  double eta_r) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw BadParam("gamma must be positive");
  if (!std::isfinite(omega_tilde)) throw BadParam("omega_tilde must be finite");
  for (double eta : {eta_l, eta_r})
    if (!(eta >= 0.0 && eta <= 1.0)) throw BadParam("efficiency outside [0, 1]");

  WaveguideModel m;
  m.gamma_ = gamma;
  m.omega_tilde_ = omega_tilde;
  m.parity_ = parity;
  m.eta_ = {eta_l, eta_r};
  const Mat4 j = collective_operator(parity);
  m.jump_ = {j, j};
  m.hamiltonian_ = (0.5 * omega_tilde) * (emitter::sigma_z(1) + emitter::sigma_z(2));
  m.decay_generator_ = j.adjoint() * j + j.adjoint() * j;
  return m;
}

// Both waveguide outputs, always: an unmonitored port (efficiency 0) still
// dissipates.
inline std::array<JumpChannel, 2> jump_operator_set(const WaveguideModel& model) {
  return {JumpChannel{Channel::Left, model.jump(Channel::Left), model.efficiency(Channel::Left)},
          JumpChannel{Channel::Right, model.jump(Channel::Right), model.efficiency(Channel::Right)}};
}

}  // namespace wgqed
