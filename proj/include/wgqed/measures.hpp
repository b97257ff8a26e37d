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

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "wgqed/model.hpp"
#include "wgqed/qmat.hpp"

namespace wgqed {

// sigma_y (x) sigma_y
inline const Mat4& spin_flip() {
  static const Mat4 yy = kron(pauli::y(), pauli::y());
  return yy;
}

// Wootters concurrence from the spectral ensemble rho = sum_k |v_k><v_k|:
// the lambda_i are the singular values of tau_kl = <v_k| (yy) |v_l*>.
// Eigenvalues below the cutoff are rounding noise; dropping them moves tau
// only off the diagonal, so the result shifts at second order. Pure states
// reduce to |<psi| (yy) |psi*>| with no square root of a near-zero number.
inline double concurrence(const Mat4& rho) {
  constexpr double kRankCutoff = 1e-12;
  const auto es = herm_eig(rho);
  if (es.values[3] < -kPsdTolerance)
    throw NotPsd("concurrence of a state with eigenvalue " + std::to_string(es.values[3]));
  std::array<Ket, 4> v{};
  std::size_t rank = 0;
  for (std::size_t k = 0; k < 4; ++k)
    if (es.values[k] > kRankCutoff * std::max(es.values[0], 1e-300))
      v[rank++] = std::sqrt(es.values[k]) * es.vector(k);
  if (rank == 0) return 0.0;
  if (rank == 1) {
    const Ket& u = v[0];
    return std::clamp(2.0 * std::abs(u[0] * u[3] - u[1] * u[2]), 0.0, 1.0);
  }

  const Mat4& yy = spin_flip();
  Mat4 tau;
  for (std::size_t k = 0; k < rank; ++k) {
    const Ket flipped = yy * v[k].conjugate();
    for (std::size_t l = 0; l < rank; ++l) tau(l, k) = inner(v[l], flipped);
  }
  const auto sv = herm_eig((tau * tau.adjoint()).hermitian_part());
  std::array<double, 4> l{};
  for (std::size_t k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, sv.values[k]));
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

// 2 |c0 c3 - c1 c2| for a normalized pure state.
inline double concurrence_pure(const Ket& psi) {
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

struct ObservableSet {
  std::array<double, 4> populations{};
  cplx rho03{};
  cplx rho12{};
  double concurrence = 0.0;
  // <B|rho|B> for B in PsiPlus, PsiMinus, PhiPlus, PhiMinus (kBellStates order)
  std::array<double, 4> bell_fidelities{};

  double fidelity(NamedState bell) const {
    for (std::size_t k = 0; k < kBellStates.size(); ++k)
      if (kBellStates[k] == bell) return bell_fidelities[k];
    throw BadParam("not a Bell state label");
  }
};

inline double fidelity(const Mat4& rho, const Ket& psi) { return expect(rho, psi).real(); }

inline ObservableSet observables(const Mat4& rho) {
  ObservableSet o;
  for (std::size_t i = 0; i < 4; ++i) o.populations[i] = rho(i, i).real();
  o.rho03 = rho(0, 3);
  o.rho12 = rho(1, 2);
  o.concurrence = concurrence(rho);
  for (std::size_t k = 0; k < kBellStates.size(); ++k)
    o.bell_fidelities[k] = fidelity(rho, named_state(kBellStates[k]));
  return o;
}

enum class TerminalClass { PsiMinusLike, PhiMinusLike, PsiPlusLike, PhiPlusLike, Separable, Unconverged };

inline constexpr std::array<TerminalClass, 6> kTerminalClasses{
    TerminalClass::PsiMinusLike, TerminalClass::PhiMinusLike, TerminalClass::PsiPlusLike,
    TerminalClass::PhiPlusLike,  TerminalClass::Separable,    TerminalClass::Unconverged};

inline std::string_view to_string(TerminalClass c) {
  switch (c) {
    case TerminalClass::PsiMinusLike: return "psi_minus_like";
    case TerminalClass::PhiMinusLike: return "phi_minus_like";
    case TerminalClass::PsiPlusLike: return "psi_plus_like";
    case TerminalClass::PhiPlusLike: return "phi_plus_like";
    case TerminalClass::Separable: return "separable";
    case TerminalClass::Unconverged: return "unconverged";
  }
  return "?";
}

inline TerminalClass bell_class(NamedState bell) {
  switch (bell) {
    case NamedState::PsiMinus: return TerminalClass::PsiMinusLike;
    case NamedState::PhiMinus: return TerminalClass::PhiMinusLike;
    case NamedState::PsiPlus: return TerminalClass::PsiPlusLike;
    case NamedState::PhiPlus: return TerminalClass::PhiPlusLike;
    default: throw BadParam("not a Bell state label");
  }
}

// Thresholds are tunable; the defaults are artifact choices.
struct ClassifyOptions {
  double bell_threshold = 0.98;
  double separable_threshold = 0.02;
  double min_time_t1 = 10.0;  // records must reach this many T1
};

inline TerminalClass classify_state(const ObservableSet& o, const ClassifyOptions& opts = {}) {
  for (NamedState b : kBellStates)
    if (o.fidelity(b) >= opts.bell_threshold) return bell_class(b);
  if (o.concurrence <= opts.separable_threshold) return TerminalClass::Separable;
  return TerminalClass::Unconverged;
}

}  // namespace wgqed
