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

// Small dense complex linear algebra for two-qubit problems. Sizes are
// template parameters, so every operation is allocation-free.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>

#include "wgqed/errors.hpp"

namespace wgqed {

using cplx = std::complex<double>;

template <std::size_t N>
class Vector {
 public:
  static constexpr std::size_t dim = N;

  constexpr Vector() = default;
  constexpr Vector(std::initializer_list<cplx> values) {
    std::copy_n(values.begin(), std::min(values.size(), N), amps_.begin());
  }

  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const cplx, N> amplitudes() const { return amps_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  // Throws BadParam on the zero vector.
  Vector normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw BadParam("cannot normalize a zero vector");
    Vector out = *this;
    for (auto& a : out.amps_) a /= n;
    return out;
  }

  Vector conjugate() const {
    Vector out = *this;
    for (auto& a : out.amps_) a = std::conj(a);
    return out;
  }

  Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) amps_[i] += o.amps_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) amps_[i] -= o.amps_[i];
    return *this;
  }
  Vector& operator*=(cplx s) {
    for (auto& a : amps_) a *= s;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(cplx s, Vector a) { return a *= s; }

 private:
  std::array<cplx, N> amps_{};
};

// <a|b>
template <std::size_t N>
cplx inner(const Vector<N>& a, const Vector<N>& b) {
  cplx s{};
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Row-major square matrix of fixed size.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  // Row-major entries; missing trailing entries are zero.
  constexpr Matrix(std::initializer_list<cplx> row_major) {
    std::copy_n(row_major.begin(), std::min(row_major.size(), N * N), data_.begin());
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m;
    for (std::size_t i = 0; i < N && i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  // |a><b|
  static Matrix outer(const Vector<N>& a, const Vector<N>& b) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = a[i] * std::conj(b[j]);
    return m;
  }

  static Matrix projector(const Vector<N>& v) { return outer(v, v); }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }
  std::span<const cplx, N * N> entries() const { return data_; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  // Entrywise complex conjugate in the computational basis.
  Matrix conjugate() const {
    Matrix m;
    for (std::size_t k = 0; k < N * N; ++k) m.data_[k] = std::conj(data_[k]);
    return m;
  }

  cplx trace() const {
    cplx s{};
    for (std::size_t i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  // Largest entrywise deviation from the adjoint.
  double hermiticity_error() const {
    double e = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i; j < N; ++j)
        e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return e;
  }

  // (m + m^dag) / 2
  Matrix hermitian_part() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }
  Matrix& operator*=(double s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Vector<N> operator*(const Matrix& a, const Vector<N>& v) {
    Vector<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      cplx s{};
      for (std::size_t j = 0; j < N; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<cplx, N * N> data_{};
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Ket = Vector<4>;

template <std::size_t N, std::size_t M>
Matrix<N * M> kron(const Matrix<N>& a, const Matrix<M>& b) {
  Matrix<N * M> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < M; ++k)
        for (std::size_t l = 0; l < M; ++l) out(i * M + k, j * M + l) = a(i, j) * b(k, l);
  return out;
}

template <std::size_t N>
Matrix<N> commutator(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b - b * a;
}

template <std::size_t N>
Matrix<N> anticommutator(const Matrix<N>& a, const Matrix<N>& b) {
  return a * b + b * a;
}

// Tr(op rho)
template <std::size_t N>
cplx expect(const Matrix<N>& op, const Matrix<N>& rho) {
  cplx s{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) s += op(i, k) * rho(k, i);
  return s;
}

// <v|op|v>
template <std::size_t N>
cplx expect(const Matrix<N>& op, const Vector<N>& v) {
  return inner(v, op * v);
}

template <std::size_t N>
struct EigenSystem {
  std::array<double, N> values{};  // descending
  Matrix<N> vectors;               // column k pairs with values[k]

  Vector<N> vector(std::size_t k) const {
    Vector<N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
    return v;
  }
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;

namespace detail {

// Cyclic complex Jacobi sweeps. `a` is overwritten with its (almost)
// diagonal form and `v` accumulates the rotations.
template <std::size_t N>
void jacobi_diagonalize(Matrix<N>& a, Matrix<N>& v) {
  constexpr int kMaxSweeps = 100;
  constexpr double kOffTolerance = 1e-12;
  const double scale = std::max(1.0, a.frobenius_norm());
  v = Matrix<N>::identity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) < kOffTolerance * scale) return;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double r = std::abs(a(p, q));
        if (r < 1e-300) continue;
        const cplx phase = a(p, q) / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx upp = c;
        const cplx upq = s;
        const cplx uqp = -s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < N; ++k) {  // a <- a U
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < N; ++k) {  // a <- U^dag a
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < N; ++k) {  // v <- v U
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }
}

}  // namespace detail

// Eigen-decomposition of a Hermitian matrix; eigenvalues descending.
template <std::size_t N>
EigenSystem<N> herm_eig(const Matrix<N>& m) {
  if (const double err = m.hermiticity_error(); err > kHermitianTolerance)
    throw NotHermitian("matrix deviates from its adjoint by " + std::to_string(err));
  Matrix<N> a = m.hermitian_part();
  Matrix<N> v;
  detail::jacobi_diagonalize(a, v);

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  EigenSystem<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template <std::size_t N>
double min_eigenvalue(const Matrix<N>& m) {
  return herm_eig(m).values[N - 1];
}

// V f(Lambda) V^dag for a Hermitian matrix.
template <std::size_t N, class F>
Matrix<N> apply_spectral(const EigenSystem<N>& es, F&& f) {
  Matrix<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const cplx fk = f(es.values[k]);
    if (fk == cplx{}) continue;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        out(i, j) += es.vectors(i, k) * fk * std::conj(es.vectors(j, k));
  }
  return out;
}

// Principal square root of a positive semidefinite matrix. Eigenvalues in
// [-1e-8, 0) count as zero.
template <std::size_t N>
Matrix<N> sqrt_psd(const Matrix<N>& m) {
  const auto es = herm_eig(m);
  if (es.values[N - 1] < -kPsdTolerance)
    throw NotPsd("minimum eigenvalue " + std::to_string(es.values[N - 1]));
  return apply_spectral(es, [](double x) { return cplx{std::sqrt(std::max(0.0, x))}; });
}

// Half the trace norm of a - b; both Hermitian.
template <std::size_t N>
double trace_distance(const Matrix<N>& a, const Matrix<N>& b) {
  const auto es = herm_eig((a - b).hermitian_part());
  double s = 0.0;
  for (double x : es.values) s += std::abs(x);
  return 0.5 * s;
}

namespace pauli {

inline Mat2 x() { return Mat2{0.0, 1.0, 1.0, 0.0}; }
inline Mat2 y() { return Mat2{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}; }
// Basis order {|g>, |e>}: sigma_z|e> = +|e>, sigma_z|g> = -|g>.
inline Mat2 z() { return Mat2{-1.0, 0.0, 0.0, 1.0}; }
// Lowering operator |g><e|.
inline Mat2 lower() { return Mat2{0.0, 1.0, 0.0, 0.0}; }

}  // namespace pauli

}  // namespace wgqed
