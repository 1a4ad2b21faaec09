// Copyright 2026 The intquad Authors
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

#include "intquad/numkernel.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtest/gtest.h"
#include "test_util.h"

namespace intquad {
namespace {

using testing_util::mat2;
using testing_util::random_symmetric;
using testing_util::vec;

TEST(SymEig, Identity) {
  const SpectralData s = sym_eig(Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 1.0);
  EXPECT_LE((s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(2, 2))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(SymEig, TwoByTwoDescending) {
  const SpectralData s = sym_eig(mat2(2, 1, 1, 2));
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.max_eigenvalue(), s.eigenvalues(0));
  EXPECT_DOUBLE_EQ(s.min_eigenvalue(), s.eigenvalues(1));
}

TEST(SymEig, Singular) {
  const SpectralData s = sym_eig(mat2(1, 0, 0, 0));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 0.0, 1e-15);
}

TEST(SymEig, RejectsNonFinite) {
  EXPECT_THROW(sym_eig(mat2(1, std::nan(""), 0, 1)), std::invalid_argument);
  EXPECT_THROW(sym_eig(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST(SymEig, ReconstructionProperty) {
  for (int n : {1, 2, 5, 17, 50}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Matrix m = random_symmetric(n, seed * 31 + n);
      const SpectralData s = sym_eig(m);
      const Matrix& q = s.eigenvectors;
      const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
      EXPECT_LE((q.transpose() * q - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((q * s.eigenvalues.asDiagonal() * q.transpose() - m).cwiseAbs().maxCoeff(),
                1e-8 * scale);
      for (int i = 1; i < n; ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
    }
  }
}

TEST(PsdSqrtFactor, Zero) {
  EXPECT_EQ(psd_sqrt_factor(Matrix::Zero(3, 3)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(PsdSqrtFactor, Identity) {
  const Matrix l = psd_sqrt_factor(Matrix::Identity(4, 4));
  EXPECT_LE((l * l.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PsdSqrtFactor, SingularRankOne) {
  const Matrix s = mat2(1, 1, 1, 1);
  const Matrix l = psd_sqrt_factor(s);
  EXPECT_LE((l * l.transpose() - s).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PsdSqrtFactor, RoundTripOnRandomPsd) {
  for (int n : {3, 10, 30}) {
    const Matrix b = random_symmetric(n, 100 + n);
    // Rank-deficient PSD matrix.
    const Matrix s = b.leftCols(n / 2 + 1) * b.leftCols(n / 2 + 1).transpose();
    const Matrix l = psd_sqrt_factor(s);
    EXPECT_LE((l * l.transpose() - s).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(PsdSqrtFactor, ToleratesTinyNegativeRejectsLarge) {
  EXPECT_NO_THROW(psd_sqrt_factor(mat2(1, 0, 0, -1e-9)));
  EXPECT_THROW(psd_sqrt_factor(mat2(1, 0, 0, -1e-3)), std::invalid_argument);
}

TEST(PinvSolve, Identity) {
  const Vector v = vec({0.3, -2.0, 5.5});
  const PinvSolveResult r = pinv_solve(sym_eig(Matrix::Identity(3, 3)), v, 1e-10);
  EXPECT_TRUE(r.in_range);
  EXPECT_LE((r.solution - v).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PinvSolve, SingularInRange) {
  const PinvSolveResult r = pinv_solve(sym_eig(mat2(1, 0, 0, 0)), vec({1, 0}), 1e-10);
  EXPECT_TRUE(r.in_range);
  EXPECT_NEAR(r.solution(0), 1.0, 1e-14);
  EXPECT_NEAR(r.solution(1), 0.0, 1e-14);
}

TEST(PinvSolve, SingularOutOfRange) {
  const PinvSolveResult r = pinv_solve(sym_eig(mat2(1, 0, 0, 0)), vec({0, 1}), 1e-10);
  EXPECT_FALSE(r.in_range);
  EXPECT_NEAR(r.solution.norm(), 0.0, 1e-14);
}

TEST(RandomStream, SameSubstreamSameValues) {
  const Vector a = gaussian(9, 3, 1000);
  const Vector b = gaussian(9, 3, 1000);
  EXPECT_EQ(a, b);
  RandomStream s1(9, 3), s2(9, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(s1.next_u64(), s2.next_u64());
}

TEST(RandomStream, InterleavingDoesNotMatter) {
  RandomStream a(1, 0), b(1, 1);
  std::vector<double> interleaved_a;
  for (int i = 0; i < 50; ++i) {
    interleaved_a.push_back(a.gaussian());
    b.gaussian();
  }
  const Vector fresh = gaussian(1, 0, 50);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(interleaved_a[i], fresh(i));
}

TEST(RandomStream, UniformRange) {
  RandomStream s(4, 4);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RandomStream, GaussianMoments) {
  const int count = 100000;
  const Vector g = gaussian(2026, 1, count);
  const double mean = g.mean();
  const double var = (g.array() - mean).square().sum() / (count - 1);
  EXPECT_NEAR(mean, 0.0, 0.02);
  EXPECT_NEAR(var, 1.0, 0.03);
}

TEST(RandomStream, DistinctSubstreamsUncorrelated) {
  const int count = 100000;
  const Vector a = gaussian(2026, 1, count);
  const Vector b = gaussian(2026, 2, count);
  const Vector c = gaussian(2027, 1, count);
  const auto corr = [](const Vector& x, const Vector& y) {
    const Vector xc = x.array() - x.mean();
    const Vector yc = y.array() - y.mean();
    return xc.dot(yc) / (xc.norm() * yc.norm());
  };
  EXPECT_LT(std::abs(corr(a, b)), 0.02);
  EXPECT_LT(std::abs(corr(a, c)), 0.02);
}

}  // namespace
}  // namespace intquad
