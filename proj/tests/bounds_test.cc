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

#include "intquad/bounds.h"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtest/gtest.h"
#include "intquad/exact.h"
#include "test_util.h"

namespace intquad {
namespace {

using testing_util::e1;
using testing_util::e2;
using testing_util::generated;
using testing_util::mat2;
using testing_util::random_small;
using testing_util::vec;

TEST(ScalarDualBound, InteriorRoot) {
  const NormalizedProblem np = normalize(e1());
  const ScalarDualResult r = scalar_dual_bound(np);
  EXPECT_EQ(r.kind, ScalarDualCase::kInteriorRoot);
  EXPECT_NEAR(r.alpha_star, 0.8, 1e-8);
  EXPECT_NEAR(r.bound, -0.2, 1e-9);
}

TEST(ScalarDualBound, BoundaryLimit) {
  const NormalizedProblem np = normalize(Problem(Matrix::Identity(2, 2), vec({-0.5, -0.5})));
  const ScalarDualResult r = scalar_dual_bound(np);
  EXPECT_EQ(r.kind, ScalarDualCase::kBoundaryLimit);
  EXPECT_NEAR(r.bound, 0.0, 1e-9);
}

TEST(ScalarDualBound, SingularP) {
  const NormalizedProblem np = normalize(Problem(mat2(1, 0, 0, 0), vec({-0.5, 0})));
  const ScalarDualResult r = scalar_dual_bound(np);
  EXPECT_EQ(r.kind, ScalarDualCase::kSingularP);
  EXPECT_EQ(r.alpha_star, 0.0);
  EXPECT_NEAR(r.bound, -0.25, 1e-15);
}

TEST(ScalarDualBound, IntegerContinuousMinimizer) {
  const Matrix p = mat2(2, 1, 1, 2);
  const Problem prob(p, -(p * vec({1, -1})), 0.5);
  const ScalarDualResult r = scalar_dual_bound(normalize(prob));
  EXPECT_EQ(r.kind, ScalarDualCase::kIntegerCts);
  EXPECT_DOUBLE_EQ(r.bound, continuous_info(prob).f_cts);
}

TEST(ScalarDualBound, DerivativeIsDecreasing) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NormalizedProblem np = normalize(generated(8, seed));
    const double w_min = np.inner.spectrum().min_eigenvalue();
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 50; ++k) {
      const double alpha = w_min * k / 50.0;
      const double d = scalar_dual_derivative(np, alpha);
      EXPECT_LE(d, prev + 1e-12);
      prev = d;
    }
  }
}

TEST(ScalarDualBound, MaximizesOverGrid) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NormalizedProblem np = normalize(generated(6, seed));
    const ScalarDualResult r = scalar_dual_bound(np);
    const double w_min = np.inner.spectrum().min_eigenvalue();
    for (int k = 0; k < 200; ++k) {
      EXPECT_LE(scalar_dual_value(np, w_min * k / 200.0), r.bound + 1e-9);
    }
  }
}

TEST(ScalarDualBound, AlphaOutsideRangeThrows) {
  const NormalizedProblem np = normalize(e1());
  EXPECT_THROW(scalar_dual_value(np, -0.1), std::invalid_argument);
  EXPECT_THROW(scalar_dual_value(np, 1.0), std::invalid_argument);
}

TEST(TrustRegionBound, Examples) {
  EXPECT_NEAR(trust_region_bound(e1()), -0.2, 1e-15);
  const Matrix p = mat2(2, 1, 1, 2);
  const Problem integral(p, -(p * vec({2, 3})));
  EXPECT_DOUBLE_EQ(trust_region_bound(integral), continuous_info(integral).f_cts);
  const Problem singular(mat2(1, 0, 0, 0), vec({-0.3, 0}));
  EXPECT_DOUBLE_EQ(trust_region_bound(singular), continuous_info(singular).f_cts);
  EXPECT_THROW(trust_region_bound(Problem(mat2(1, 0, 0, 0), vec({0, 1}))),
               std::invalid_argument);
}

// Lagrangian of min f(x) s.t. |x - x_cts|^2 >= r^2, minimized over x, for
// alpha in [0, w_min).
double trust_region_dual(const Problem& p, const Vector& xc, double r2, double alpha) {
  const int n = p.dimension();
  const Matrix m = p.P() - alpha * Matrix::Identity(n, n);
  const Vector b = p.q() + alpha * xc;
  const Vector x = -m.ldlt().solve(b);
  return x.dot(m * x) + 2 * b.dot(x) - alpha * xc.squaredNorm() + alpha * r2 + p.offset();
}

TEST(TrustRegionBound, ClosedFormMatchesOneDimensionalDual) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Problem p = random_small(2 + static_cast<int>(seed % 5), 500 + seed);
    const ContinuousInfo info = continuous_info(p);
    const double r2 = (info.x_cts - info.x_rnd.cast<double>()).squaredNorm();
    const double w_min = p.spectrum().min_eigenvalue();
    double grid_max = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 400; ++k) {
      grid_max = std::max(grid_max, trust_region_dual(p, info.x_cts, r2, w_min * k / 400.0));
    }
    const double near_edge = trust_region_dual(p, info.x_cts, r2, w_min * (1 - 1e-9));
    const double closed = trust_region_bound(p);
    EXPECT_GE(closed, grid_max - 1e-9);
    EXPECT_NEAR(closed, near_edge, 1e-6 * std::max(1.0, std::abs(closed)));
    EXPECT_LE(closed, brute_force(p).value + 1e-9);
  }
}

TEST(DualGainBound, Examples) {
  const DualGainBound center = dual_gain_bound(normalize(Problem(Matrix::Identity(2, 2),
                                                            vec({-0.5, -0.5}))));
  EXPECT_NEAR(center.uncorrected, 0.5, 1e-15);
  EXPECT_NEAR(center.corrected, 0.5, 1e-15);

  const DualGainBound off = dual_gain_bound(normalize(Problem(Matrix::Identity(2, 2),
                                                         vec({-0.6, -0.6}))));
  EXPECT_NEAR(off.uncorrected, 0.4608, 1e-12);
  EXPECT_NEAR(off.corrected, 0.32, 1e-12);

  const DualGainBound corner = dual_gain_bound(normalize(Problem(Matrix::Identity(2, 2),
                                                            vec({0, 0}))));
  EXPECT_NEAR(corner.uncorrected, 0.0, 1e-15);
  EXPECT_NEAR(corner.corrected, 0.0, 1e-15);
}

TEST(DualGainBound, CorrectedFormHoldsAndNeverExceedsUncorrected) {
  for (int n : {2, 5, 12}) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
      const NormalizedProblem np = normalize(generated(n, seed));
      const DualGainBound rhs = dual_gain_bound(np);
      EXPECT_GE(rhs.corrected, 0.0);
      EXPECT_LE(rhs.corrected, rhs.uncorrected + 1e-15);
      EXPECT_GE(scalar_dual_bound(np).bound - np.f_cts(), rhs.corrected - 1e-7);
    }
  }
}

TEST(CertifyDual, Examples) {
  const Problem p = e2();
  const DualCheck zero = certify_dual(p, Vector::Zero(2), 1e-12);
  EXPECT_TRUE(zero.valid);
  EXPECT_NEAR(zero.bound, continuous_info(p).f_cts, 1e-12);

  const Problem inner(Matrix::Identity(2, 2), vec({-0.6, -0.6}));
  const DualCheck root = certify_dual(inner, vec({0.8, 0.8}), 1e-12);
  EXPECT_TRUE(root.valid);
  EXPECT_NEAR(root.bound, -0.4, 1e-12);

  const DualCheck bad = certify_dual(inner, vec({2, 2}), 1e-12);
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.bound, -std::numeric_limits<double>::infinity());

  EXPECT_FALSE(certify_dual(inner, vec({-0.1, 0.2}), 1e-12).valid);
}

TEST(CertifyDual, ReproducesScalarBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const NormalizedProblem np = normalize(generated(7, seed));
    const ScalarDualResult r = scalar_dual_bound(np);
    const DualCheck c =
        certify_dual(np.inner, Vector::Constant(7, r.alpha_star), 1e-12);
    ASSERT_TRUE(c.valid);
    EXPECT_NEAR(c.bound + np.value_offset, r.bound, 1e-7);
  }
}

TEST(BoundChain, AgainstBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const Problem p = random_small(n, seed);
    const NormalizedProblem np = normalize(p);
    const BoundReport r = bound_report(p, np);
    const double star = brute_force(p).value;
    EXPECT_LE(r.f_cts, r.f_tr + 1e-7);
    EXPECT_LE(r.f_tr, star + 1e-7);
    EXPECT_LE(r.f_cts, r.f_scalar + 1e-7);
    EXPECT_LE(r.f_scalar, star + 1e-7);
    EXPECT_FALSE(r.f_sdp.has_value());
  }
}

}  // namespace
}  // namespace intquad
