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

#ifndef INTQUAD_MODEL_H_
#define INTQUAD_MODEL_H_

#include <memory>

#include "intquad/numkernel.h"

namespace intquad {

// Pseudo-inverse rank cutoff relative to the largest eigenvalue of P.
inline constexpr double kRankTolerance = 1e-10;

// Convex quadratic f(x) = x^T P x + 2 q^T x + offset over the integer
// lattice. P is symmetric positive semidefinite and nonzero; both are
// checked on construction and violations throw std::invalid_argument.
// The eigendecomposition of P is computed once and shared by copies and by
// problems derived through with_linear_term().
class Problem {
 public:
  Problem(Matrix p, Vector q, double offset = 0.0);

  int dimension() const { return static_cast<int>(q_.size()); }
  const Matrix& P() const { return p_; }
  const Vector& q() const { return q_; }
  double offset() const { return offset_; }
  const SpectralData& spectrum() const { return *spectrum_; }

  // Same quadratic form with a different linear term and offset.
  Problem with_linear_term(Vector q, double offset) const;

 private:
  Problem(Matrix p, Vector q, double offset,
          std::shared_ptr<const SpectralData> spectrum);

  Matrix p_;
  Vector q_;
  double offset_;
  std::shared_ptr<const SpectralData> spectrum_;
};

// Integer least squares |Ax - b|^2 as P = A^T A, q = -A^T b, offset = b^T b.
Problem from_ils(const Matrix& a, const Vector& b);

double evaluate(const Problem& p, const Vector& x);
double evaluate(const Problem& p, const IntVector& x);

// 2 (P x + q).
Vector gradient(const Problem& p, const Vector& x);
Vector gradient(const Problem& p, const IntVector& x);

// Round half away from zero, elementwise.
IntVector round_to_lattice(const Vector& x);

struct ContinuousInfo {
  Vector x_cts;
  // -q^T P^+ q + offset; -infinity when q is outside the range of P.
  double f_cts = 0.0;
  bool in_range = false;
  IntVector x_rnd;
  double f_rnd = 0.0;
  // (n/4) * w_max bounds f_rnd - f_cts.
  double round_gap_bound = 0.0;
};

ContinuousInfo continuous_info(const Problem& p);

// The problem translated by the integer vector shift = floor(x_cts), so that
// for integer x:  f_original(x) = f_inner(x - shift) + value_offset.
struct NormalizedProblem {
  Problem inner;
  IntVector shift;
  double value_offset = 0.0;
  // Continuous minimizer of `inner`, each coordinate in [0, 1).
  Vector x_cts;
  // Every coordinate of x_cts lies within 1e-9 of an integer.
  bool is_integer_cts = false;

  // Continuous bound of the original problem (= inner f_cts + value_offset).
  double f_cts() const;
  IntVector to_original(const IntVector& inner_x) const { return inner_x + shift; }
  IntVector to_inner(const IntVector& original_x) const { return original_x - shift; }
};

// Throws std::invalid_argument when q is outside the range of P.
NormalizedProblem normalize(const Problem& p);

}  // namespace intquad

#endif  // INTQUAD_MODEL_H_
