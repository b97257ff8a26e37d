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

#include <random>

#include "test_support.hpp"
#include "wgqed/qmat.hpp"

namespace wgqed {
namespace {

TEST(Kron, IdentityTimesIdentity) { EXPECT_EQ(kron(Mat2::identity(), Mat2::identity()), Mat4::identity()); }

TEST(Kron, SigmaYSigmaYIsSignedAntidiagonal) {
  const Mat4 yy = kron(pauli::y(), pauli::y());
  Mat4 expected;
  expected(0, 3) = -1.0;
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  expected(3, 0) = -1.0;
  EXPECT_EQ(yy, expected);
}

TEST(Kron, DiagonalTimesIdentity) {
  EXPECT_EQ(kron(Mat2::diagonal({1.0, 2.0}), Mat2::identity()), Mat4::diagonal({1.0, 1.0, 2.0, 2.0}));
}

TEST(Kron, BilinearOnRandomInputs) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 a = testing::random_hermitian<2>(g), a2 = testing::random_hermitian<2>(g);
    const Mat2 b = testing::random_hermitian<2>(g);
    const cplx s = testing::gaussian_cplx(g);
    EXPECT_LT((kron(s * a + a2, b) - (s * kron(a, b) + kron(a2, b))).max_abs(), 1e-13);
    EXPECT_LT((kron(b, s * a + a2) - (s * kron(b, a) + kron(b, a2))).max_abs(), 1e-13);
  }
}

TEST(HermEig, DiagonalSortedDescending) {
  const auto es = herm_eig(Mat4::diagonal({3.0, 1.0, 2.0, 0.0}));
  EXPECT_DOUBLE_EQ(es.values[0], 3.0);
  EXPECT_DOUBLE_EQ(es.values[1], 2.0);
  EXPECT_DOUBLE_EQ(es.values[2], 1.0);
  EXPECT_DOUBLE_EQ(es.values[3], 0.0);
}

TEST(HermEig, PauliXSpectrum) {
  const auto es = herm_eig(pauli::x());
  EXPECT_NEAR(es.values[0], 1.0, 1e-14);
  EXPECT_NEAR(es.values[1], -1.0, 1e-14);
}

TEST(HermEig, RejectsNonHermitian) {
  Mat4 m = Mat4::identity();
  m(0, 1) = 1e-6;
  EXPECT_THROW(herm_eig(m), NotHermitian);
}

TEST(HermEig, MatchesCharacteristicPolynomialRoots) {
  std::mt19937_64 g(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat4 h = testing::random_hermitian(g);
    const auto es = herm_eig(h);
    const auto ref = testing::charpoly_eigenvalues(h);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(es.values[k], ref[k], 1e-8) << "trial " << trial;
  }
}

TEST(HermEig, EigenpairsReconstructionAndInvariants) {
  std::mt19937_64 g(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Mat4 h = testing::random_hermitian(g);
    const auto es = herm_eig(h);
    for (std::size_t k = 0; k < 4; ++k) {
      const Ket v = es.vector(k);
      const Ket r = h * v - es.values[k] * v;
      EXPECT_LT(r.norm(), 1e-9);
      for (std::size_t l = 0; l < 4; ++l)
        EXPECT_NEAR(std::abs(inner(es.vector(k), es.vector(l))), k == l ? 1.0 : 0.0, 1e-9);
      if (k > 0) {
        EXPECT_GE(es.values[k - 1], es.values[k]);
      }
    }
    const Mat4 rebuilt = apply_spectral(es, [](double x) { return cplx{x}; });
    EXPECT_LT((rebuilt - h).max_abs(), 1e-9);

    double sum = 0.0, prod = 1.0;
    for (double x : es.values) {
      sum += x;
      prod *= x;
    }
    EXPECT_NEAR(sum, h.trace().real(), 1e-9);
    EXPECT_NEAR(prod, testing::determinant(h).real(), 1e-8);
  }
}

TEST(SqrtPsd, IdentityAndDiagonal) {
  EXPECT_LT((sqrt_psd(Mat4::identity()) - Mat4::identity()).max_abs(), 1e-14);
  EXPECT_LT((sqrt_psd(Mat4::diagonal({4.0, 1.0, 0.0, 9.0})) - Mat4::diagonal({2.0, 1.0, 0.0, 3.0})).max_abs(), 1e-14);
}

TEST(SqrtPsd, SquaresBackOnRandomPsd) {
  std::mt19937_64 g(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Mat4 m = testing::random_density(g, 1 + trial % 4);
    const Mat4 r = sqrt_psd(m);
    EXPECT_LT(r.hermiticity_error(), 1e-12);
    EXPECT_GE(min_eigenvalue(r), -1e-8);
    EXPECT_LT((r * r - m).max_abs(), 1e-8);
  }
}

TEST(SqrtPsd, ProjectorIsItsOwnRoot) {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat4 p = Mat4::projector(testing::random_ket(g));
    EXPECT_LT((sqrt_psd(p) - p).max_abs(), 1e-7);
  }
}

TEST(SqrtPsd, ClampsTinyNegativesAndRejectsLargeOnes) {
  EXPECT_NO_THROW(sqrt_psd(Mat4::diagonal({1.0, 0.0, 0.0, -5e-9})));
  EXPECT_THROW(sqrt_psd(Mat4::diagonal({1.0, 0.0, 0.0, -1e-6})), NotPsd);
}

TEST(Expect, TraceOfIdentityIsOne) {
  std::mt19937_64 g(3);
  const Mat4 rho = testing::random_density(g);
  EXPECT_NEAR(expect(Mat4::identity(), rho).real(), 1.0, 1e-12);
}

TEST(Expect, TotalSigmaZOnGroundState) {
  const Mat4 sz = kron(pauli::z(), Mat2::identity()) + kron(Mat2::identity(), pauli::z());
  const Mat4 gg = Mat4::diagonal({1.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(expect(sz, gg).real(), -2.0);
}

TEST(TraceDistance, OrthogonalPureStatesAreOneApart) {
  const Mat4 a = Mat4::diagonal({1.0, 0.0, 0.0, 0.0});
  const Mat4 b = Mat4::diagonal({0.0, 1.0, 0.0, 0.0});
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-14);
}

}  // namespace
}  // namespace wgqed
