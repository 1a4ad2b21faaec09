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

#include "intquad/model.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gtest/gtest.h"
#include "test_util.h"

namespace intquad {
namespace {

using testing_util::e1;
using testing_util::e2;
using testing_util::generated;
using testing_util::ivec;
using testing_util::mat2;
using testing_util::random_small;
using testing_util::vec;

TEST(Problem, RejectsInvalidMatrices) {
  EXPECT_THROW(Problem(Matrix::Zero(2, 2), vec({1, 1})), std::invalid_argument);
  EXPECT_THROW(Problem(Matrix::Identity(2, 3), vec({1, 1})), std::invalid_argument);
  EXPECT_THROW(Problem(mat2(1, 0.5, 0, 1), vec({0, 0})), std::invalid_argument);
  EXPECT_THROW(Problem(mat2(1, 0, 0, -1), vec({0, 0})), std::invalid_argument);
  EXPECT_THROW(Problem(Matrix::Identity(2, 2), vec({0, 0, 0})), std::invalid_argument);
  EXPECT_THROW(Problem(Matrix(0, 0), Vector(0)), std::invalid_argument);
}

TEST(Problem, SymmetrizesTinyAsymmetry) {
  const Problem p(mat2(2, 1 + 1e-14, 1, 2), vec({0, 0}));
  EXPECT_EQ(p.P()(0, 1), p.P()(1, 0));
}

TEST(FromIls, IdentityExpansion) {
  const Problem p = from_ils(Matrix::Identity(2, 2), vec({0.6, -0.4}));
  EXPECT_EQ(p.P(), Matrix(Matrix::Identity(2, 2)));
  EXPECT_NEAR(p.q()(0), -0.6, 1e-15);
  EXPECT_NEAR(p.q()(1), 0.4, 1e-15);
  EXPECT_NEAR(p.offset(), 0.52, 1e-15);
}

TEST(FromIls, ColumnOfOnes) {
  Matrix a(2, 1);
  a << 1, 1;
  const Problem p = from_ils(a, vec({1, 0}));
  EXPECT_DOUBLE_EQ(p.P()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.q()(0), -1.0);
  EXPECT_DOUBLE_EQ(p.offset(), 1.0);
  EXPECT_DOUBLE_EQ(evaluate(p, ivec({1})), 1.0);
}

TEST(FromIls, ZeroTarget) {
  Matrix a(3, 2);
  a << 1, 2, 0, 1, -1, 3;
  const Problem p = from_ils(a, Vector::Zero(3));
  EXPECT_EQ(p.q().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(p.offset(), 0.0);
}

TEST(FromIls, MatchesResidualNorm) {
  RandomStream rs(3, 0);
  Matrix a(6, 4);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = rs.gaussian();
  }
  Vector b(6);
  for (int i = 0; i < 6; ++i) b(i) = 3.0 * rs.gaussian();
  const Problem p = from_ils(a, b);
  for (int t = 0; t < 50; ++t) {
    IntVector x(4);
    for (int j = 0; j < 4; ++j) x(j) = static_cast<std::int64_t>(std::floor(6 * rs.uniform())) - 3;
    const double direct = (a * x.cast<double>() - b).squaredNorm();
    EXPECT_NEAR(evaluate(p, x), direct, 1e-9 * std::max(1.0, direct));
  }
}

TEST(FromIls, RejectsZeroMatrix) {
  EXPECT_THROW(from_ils(Matrix::Zero(2, 2), vec({1, 1})), std::invalid_argument);
}

TEST(Evaluate, Examples) {
  EXPECT_NEAR(evaluate(e1(), ivec({1, 0})), -0.2, 1e-15);
  EXPECT_EQ(evaluate(e1(), ivec({0, 0})), 0.0);
  EXPECT_NEAR(evaluate(e2(), ivec({0, 1})), -1.8, 1e-15);
  EXPECT_THROW(evaluate(e1(), ivec({1, 0, 0})), std::invalid_argument);
}

TEST(Evaluate, MatchesShiftedForm) {
  const Problem p = e1();
  const ContinuousInfo info = continuous_info(p);
  for (const IntVector& x : {ivec({1, 0}), ivec({-3, 2}), ivec({0, -1})}) {
    const Vector d = x.cast<double>() - info.x_cts;
    EXPECT_NEAR(evaluate(p, x), d.dot(p.P() * d) + info.f_cts, 1e-14);
  }
}

TEST(Gradient, Examples) {
  const Vector g0 = gradient(e2(), ivec({0, 0}));
  EXPECT_NEAR(g0(0), -2.8, 1e-15);
  EXPECT_NEAR(g0(1), -3.8, 1e-15);
  const Vector g1 = gradient(e1(), ivec({1, 0}));
  EXPECT_NEAR(g1(0), 0.8, 1e-15);
  EXPECT_NEAR(g1(1), 0.8, 1e-15);
  const Problem p = random_small(5, 2);
  EXPECT_LE(gradient(p, continuous_info(p).x_cts).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_THROW(gradient(e1(), Vector(Vector::Zero(3))), std::invalid_argument);
}

TEST(ContinuousInfo, E1) {
  const ContinuousInfo info = continuous_info(e1());
  EXPECT_TRUE(info.in_range);
  EXPECT_NEAR(info.x_cts(0), 0.6, 1e-15);
  EXPECT_NEAR(info.x_cts(1), -0.4, 1e-15);
  EXPECT_NEAR(info.f_cts, -0.52, 1e-15);
  EXPECT_EQ(info.x_rnd, ivec({1, 0}));
  EXPECT_NEAR(info.f_rnd, -0.2, 1e-15);
  EXPECT_NEAR(info.round_gap_bound, 0.5, 1e-15);
  EXPECT_LE(info.f_rnd - info.f_cts, info.round_gap_bound);
}

TEST(ContinuousInfo, ZeroLinearTerm) {
  const ContinuousInfo info = continuous_info(Problem(mat2(2, 1, 1, 2), vec({0, 0})));
  EXPECT_EQ(info.x_cts.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(info.f_cts, 0.0);
  EXPECT_EQ(info.x_rnd, ivec({0, 0}));
}

TEST(ContinuousInfo, OutOfRange) {
  const ContinuousInfo info = continuous_info(Problem(mat2(1, 0, 0, 0), vec({0, 1})));
  EXPECT_FALSE(info.in_range);
  EXPECT_EQ(info.f_cts, -std::numeric_limits<double>::infinity());
}

TEST(RoundToLattice, HalfAwayFromZero) {
  EXPECT_EQ(round_to_lattice(vec({0.5, -0.5, 1.5, -2.5, 0.49})), ivec({1, -1, 2, -3, 0}));
}

TEST(Normalize, E1) {
  const NormalizedProblem np = normalize(e1());
  EXPECT_EQ(np.shift, ivec({0, -1}));
  EXPECT_NEAR(np.inner.q()(0), -0.6, 1e-15);
  EXPECT_NEAR(np.inner.q()(1), -0.6, 1e-15);
  EXPECT_NEAR(np.value_offset, 0.2, 1e-15);
  EXPECT_NEAR(np.x_cts(0), 0.6, 1e-15);
  EXPECT_NEAR(np.x_cts(1), 0.6, 1e-15);
  EXPECT_FALSE(np.is_integer_cts);
  EXPECT_NEAR(np.f_cts(), -0.52, 1e-15);
}

TEST(Normalize, IntegerContinuousMinimizer) {
  const Matrix p = mat2(2, 1, 1, 2);
  const Problem prob(p, -(p * vec({3, -2})));
  const NormalizedProblem np = normalize(prob);
  EXPECT_TRUE(np.is_integer_cts);
  EXPECT_EQ(np.to_original(IntVector::Zero(2)), ivec({3, -2}));
}

TEST(Normalize, AlreadyInUnitBox) {
  const Matrix p = mat2(2, 1, 1, 2);
  const Problem prob(p, -(p * vec({0.25, 0.75})));
  const NormalizedProblem np = normalize(prob);
  EXPECT_EQ(np.shift, ivec({0, 0}));
  EXPECT_EQ(np.value_offset, 0.0);
  EXPECT_LE((np.inner.q() - prob.q()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Normalize, RejectsOutOfRange) {
  EXPECT_THROW(normalize(Problem(mat2(1, 0, 0, 0), vec({0, 1}))), std::invalid_argument);
}

TEST(Normalize, TranslationConsistency) {
  const Problem p = random_small(6, 11);
  const NormalizedProblem np = normalize(p);
  for (int i = 0; i < 6; ++i) {
    EXPECT_GE(np.x_cts(i), 0.0);
    EXPECT_LT(np.x_cts(i), 1.0);
  }
  RandomStream rs(11, 1);
  for (int t = 0; t < 100; ++t) {
    IntVector x(6);
    for (int i = 0; i < 6; ++i) x(i) = static_cast<std::int64_t>(std::floor(10 * rs.uniform())) - 5;
    const double direct = evaluate(p, x);
    const double via = evaluate(np.inner, np.to_inner(x)) + np.value_offset;
    EXPECT_NEAR(direct, via, 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST(ContinuousInfo, RoundingGapOnGeneratedInstances) {
  for (int n : {3, 10, 25}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ContinuousInfo info = continuous_info(generated(n, seed));
      EXPECT_LE(info.f_rnd - info.f_cts, info.round_gap_bound + 1e-9);
    }
  }
}

TEST(ContinuousInfo, DiagonalRoundingIsOptimal) {
  RandomStream rs(8, 8);
  for (int t = 0; t < 20; ++t) {
    Vector d(3), xc(3);
    for (int i = 0; i < 3; ++i) {
      d(i) = 0.1 + rs.uniform();
      xc(i) = 6 * rs.uniform() - 3;
    }
    const Problem p(Matrix(d.asDiagonal()), -(d.asDiagonal() * xc));
    const ContinuousInfo info = continuous_info(p);
    double best = std::numeric_limits<double>::infinity();
    for (int a = -5; a <= 5; ++a) {
      for (int b = -5; b <= 5; ++b) {
        for (int c = -5; c <= 5; ++c) best = std::min(best, evaluate(p, ivec({a, b, c})));
      }
    }
    EXPECT_NEAR(info.f_rnd, best, 1e-12);
  }
}

}  // namespace
}  // namespace intquad
