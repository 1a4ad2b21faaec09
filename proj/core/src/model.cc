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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace intquad {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-9;
constexpr double kIntegralTolerance = 1e-9;

Matrix checked_symmetric(Matrix p, const Vector& q) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument("Problem: P must be square");
  }
  if (p.rows() < 1) {
    throw std::invalid_argument("Problem: dimension must be at least 1");
  }
  if (q.size() != p.rows()) {
    throw std::invalid_argument("Problem: q has length " + std::to_string(q.size()) +
                                ", expected " + std::to_string(p.rows()));
  }
  if (!p.allFinite() || !q.allFinite()) {
    throw std::invalid_argument("Problem: P and q must be finite");
  }
  const double scale = p.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw std::invalid_argument("Problem: P must have a nonzero entry");
  }
  const double asym = (p - p.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw std::invalid_argument("Problem: P is not symmetric");
  }
  return 0.5 * (p + p.transpose());
}

}  // namespace

Problem::Problem(Matrix p, Vector q, double offset)
    : p_(checked_symmetric(std::move(p), q)), q_(std::move(q)), offset_(offset) {
  if (!std::isfinite(offset_)) {
    throw std::invalid_argument("Problem: offset must be finite");
  }
  auto spectrum = std::make_shared<SpectralData>(sym_eig(p_));
  const double n = static_cast<double>(q_.size());
  if (spectrum->min_eigenvalue() < -kPsdTolerance * (p_.trace() / n)) {
    throw std::invalid_argument("Problem: P is not positive semidefinite (min eigenvalue " +
                                std::to_string(spectrum->min_eigenvalue()) + ")");
  }
  spectrum_ = std::move(spectrum);
}

Problem::Problem(Matrix p, Vector q, double offset,
                 std::shared_ptr<const SpectralData> spectrum)
    : p_(std::move(p)), q_(std::move(q)), offset_(offset), spectrum_(std::move(spectrum)) {}

Problem Problem::with_linear_term(Vector q, double offset) const {
  if (q.size() != q_.size()) {
    throw std::invalid_argument("with_linear_term: dimension mismatch");
  }
  if (!q.allFinite() || !std::isfinite(offset)) {
    throw std::invalid_argument("with_linear_term: non-finite data");
  }
  return Problem(p_, std::move(q), offset, spectrum_);
}

Problem from_ils(const Matrix& a, const Vector& b) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw std::invalid_argument("from_ils: A must be nonempty");
  }
  if (b.size() != a.rows()) {
    throw std::invalid_argument("from_ils: b length must equal rows of A");
  }
  if (a.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("from_ils: A is zero");
  }
  Matrix p = a.transpose() * a;
  Vector q = -(a.transpose() * b);
  return Problem(std::move(p), std::move(q), b.squaredNorm());
}

double evaluate(const Problem& p, const Vector& x) {
  if (x.size() != p.dimension()) {
    throw std::invalid_argument("evaluate: dimension mismatch");
  }
  return x.dot(p.P() * x) + 2.0 * p.q().dot(x) + p.offset();
}

double evaluate(const Problem& p, const IntVector& x) {
  return evaluate(p, Vector(x.cast<double>()));
}

Vector gradient(const Problem& p, const Vector& x) {
  if (x.size() != p.dimension()) {
    throw std::invalid_argument("gradient: dimension mismatch");
  }
  return 2.0 * (p.P() * x + p.q());
}

Vector gradient(const Problem& p, const IntVector& x) {
  return gradient(p, Vector(x.cast<double>()));
}

IntVector round_to_lattice(const Vector& x) {
  IntVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    out(i) = static_cast<std::int64_t>(std::round(x(i)));
  }
  return out;
}

ContinuousInfo continuous_info(const Problem& p) {
  const int n = p.dimension();
  ContinuousInfo info;
  const PinvSolveResult solve = pinv_solve(p.spectrum(), -p.q(), kRankTolerance);
  info.x_cts = solve.solution;
  info.in_range = solve.in_range;
  info.round_gap_bound = 0.25 * n * p.spectrum().max_eigenvalue();
  info.x_rnd = round_to_lattice(info.x_cts);
  info.f_rnd = evaluate(p, info.x_rnd);
  if (info.in_range) {
    info.f_cts = p.q().dot(info.x_cts) + p.offset();
  } else {
    info.f_cts = -std::numeric_limits<double>::infinity();
  }
  return info;
}

double NormalizedProblem::f_cts() const {
  return inner.q().dot(x_cts) + value_offset;
}

NormalizedProblem normalize(const Problem& p) {
  const ContinuousInfo info = continuous_info(p);
  if (!info.in_range) {
    throw std::invalid_argument(
        "normalize: q is not in the range of P; the objective is unbounded below");
  }
  const int n = p.dimension();
  IntVector shift(n);
  Vector x_inner(n);
  bool integral = true;
  for (int i = 0; i < n; ++i) {
    const double xi = info.x_cts(i);
    const double fl = std::floor(xi);
    shift(i) = static_cast<std::int64_t>(fl);
    // Clamp to [0, 1) against rounding in xi - fl.
    x_inner(i) = std::clamp(xi - fl, 0.0, std::nextafter(1.0, 0.0));
    if (std::abs(xi - std::round(xi)) > kIntegralTolerance) integral = false;
  }
  const Vector shift_real = shift.cast<double>();
  Vector inner_q = p.P() * shift_real + p.q();
  NormalizedProblem out{
      .inner = p.with_linear_term(std::move(inner_q), 0.0),
      .shift = std::move(shift),
      .value_offset = evaluate(p, shift_real),
      .x_cts = std::move(x_inner),
      .is_integer_cts = integral,
  };
  return out;
}

}  // namespace intquad
