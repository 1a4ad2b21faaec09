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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace intquad {

namespace {

constexpr double kBoundaryGuard = 1e-9;
constexpr double kBoundaryFallback = 1e-7;
constexpr double kVanishTolerance = 1e-7;
constexpr double kClusterTolerance = 1e-9;
constexpr int kMaxBisections = 200;

// Spectral quantities of the normalized problem used by g and g'.
struct ScalarCurve {
  const Vector& w;
  Vector qt;     // Q^T q
  Vector s;      // Q^T 1
  Vector shift;  // qt + w s / 2; constant numerator of g'
  double w_min;
  double w_max;

  explicit ScalarCurve(const Problem& p)
      : w(p.spectrum().eigenvalues),
        qt(p.spectrum().eigenvectors.transpose() * p.q()),
        s(p.spectrum().eigenvectors.transpose() * Vector::Ones(p.dimension())),
        shift(qt + 0.5 * w.cwiseProduct(s)),
        w_min(p.spectrum().min_eigenvalue()),
        w_max(p.spectrum().max_eigenvalue()) {}

  double value(double alpha) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double c = qt(i) + 0.5 * alpha * s(i);
      sum += c * c / (w(i) - alpha);
    }
    return -sum;
  }

  double derivative(double alpha) const {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const double r = shift(i) / (w(i) - alpha);
      sum += r * r;
    }
    return 0.25 * static_cast<double>(w.size()) - sum;
  }
};

bool is_singular(const SpectralData& spectrum) {
  return spectrum.min_eigenvalue() <= kRankTolerance * spectrum.max_eigenvalue();
}

void check_alpha(const NormalizedProblem& np, double alpha) {
  if (!(alpha >= 0.0) || alpha >= np.inner.spectrum().min_eigenvalue()) {
    throw std::invalid_argument("scalar dual: alpha must lie in [0, w_min)");
  }
}

}  // namespace

const char* to_string(ScalarDualCase c) {
  switch (c) {
    case ScalarDualCase::kIntegerCts:
      return "integer_cts";
    case ScalarDualCase::kInteriorRoot:
      return "interior_root";
    case ScalarDualCase::kBoundaryLimit:
      return "boundary_limit";
    case ScalarDualCase::kSingularP:
      return "singular_P";
  }
  return "unknown";
}

double scalar_dual_value(const NormalizedProblem& np, double alpha) {
  check_alpha(np, alpha);
  return ScalarCurve(np.inner).value(alpha) + np.value_offset;
}

double scalar_dual_derivative(const NormalizedProblem& np, double alpha) {
  check_alpha(np, alpha);
  return ScalarCurve(np.inner).derivative(alpha);
}

ScalarDualResult scalar_dual_bound(const NormalizedProblem& np, double tol) {
  const int n = np.inner.dimension();
  if (tol < 0.0) tol = 1e-10 * 0.25 * n;
  ScalarDualResult out;
  out.bound = np.f_cts();
  if (np.is_integer_cts) {
    out.kind = ScalarDualCase::kIntegerCts;
    return out;
  }
  if (is_singular(np.inner.spectrum())) {
    out.kind = ScalarDualCase::kSingularP;
    return out;
  }

  const ScalarCurve curve(np.inner);
  if (curve.derivative(0.0) <= 0.0) {
    out.kind = ScalarDualCase::kInteriorRoot;
    return out;
  }

  const double alpha_hi = curve.w_min * (1.0 - kBoundaryGuard);
  if (curve.derivative(alpha_hi) > 0.0) {
    // No root below the guard. If the components at w_min have vanishing
    // numerators, g stays bounded as alpha -> w_min and the limit drops them.
    out.kind = ScalarDualCase::kBoundaryLimit;
    const double vanish = kVanishTolerance * (1.0 + np.inner.q().norm());
    bool vanishes = true;
    for (Eigen::Index i = 0; i < curve.w.size(); ++i) {
      if (curve.w(i) - curve.w_min <= kClusterTolerance * curve.w_max &&
          std::abs(curve.shift(i)) > vanish) {
        vanishes = false;
      }
    }
    if (vanishes) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < curve.w.size(); ++i) {
        if (curve.w(i) - curve.w_min <= kClusterTolerance * curve.w_max) continue;
        const double c = curve.qt(i) + 0.5 * curve.w_min * curve.s(i);
        sum += c * c / (curve.w(i) - curve.w_min);
      }
      out.alpha_star = curve.w_min;
      out.bound = -sum + np.value_offset;
    } else {
      out.alpha_star = curve.w_min * (1.0 - kBoundaryFallback);
      out.bound = curve.value(out.alpha_star) + np.value_offset;
    }
    return out;
  }

  double lo = 0.0;
  double hi = alpha_hi;
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    mid = 0.5 * (lo + hi);
    const double d = curve.derivative(mid);
    if (std::abs(d) <= tol) break;
    if (d > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
  }
  out.kind = ScalarDualCase::kInteriorRoot;
  out.alpha_star = mid;
  out.bound = std::max(curve.value(mid) + np.value_offset, np.f_cts());
  return out;
}

double trust_region_bound(const Problem& p) {
  const ContinuousInfo info = continuous_info(p);
  if (!info.in_range) {
    throw std::invalid_argument("trust_region_bound: q is not in the range of P");
  }
  if (is_singular(p.spectrum())) return info.f_cts;
  const double radius_sq = (info.x_cts - info.x_rnd.cast<double>()).squaredNorm();
  return info.f_cts + p.spectrum().min_eigenvalue() * radius_sq;
}

DualGainBound dual_gain_bound(const NormalizedProblem& np) {
  const SpectralData& spectrum = np.inner.spectrum();
  const double n = np.inner.dimension();
  const double w_min = is_singular(spectrum) ? 0.0 : spectrum.min_eigenvalue();
  const double factor = n * w_min * w_min / (4.0 * spectrum.max_eigenvalue());
  const double dist_sq = (np.x_cts.array() - 0.5).matrix().squaredNorm();
  const double ratio_sq = std::min(dist_sq / (0.25 * n), 1.0);
  const double uncorrected = 1.0 - ratio_sq;
  const double corrected = 1.0 - std::sqrt(ratio_sq);
  return {.uncorrected = factor * uncorrected * uncorrected,
          .corrected = factor * corrected * corrected};
}

DualCheck certify_dual(const Problem& p, const Vector& lambda, double psd_tol) {
  DualCheck out;
  out.bound = -std::numeric_limits<double>::infinity();
  out.min_eig_margin = -std::numeric_limits<double>::infinity();
  if (lambda.size() != p.dimension() || !lambda.allFinite()) return out;
  if ((lambda.array() < 0.0).any()) return out;

  Matrix m = p.P();
  m.diagonal() -= lambda;
  const SpectralData spectrum = sym_eig(m);
  out.min_eig_margin = spectrum.min_eigenvalue();
  if (out.min_eig_margin < -psd_tol * p.spectrum().max_eigenvalue()) return out;

  const Vector shifted_q = p.q() + 0.5 * lambda;
  const PinvSolveResult solve = pinv_solve(spectrum, shifted_q, kRankTolerance);
  if (!solve.in_range) return out;
  out.bound = -shifted_q.dot(solve.solution) + p.offset();
  out.valid = true;
  return out;
}

BoundReport bound_report(const Problem& p, const NormalizedProblem& np) {
  BoundReport report;
  report.f_cts = np.f_cts();
  const ScalarDualResult scalar = scalar_dual_bound(np);
  report.f_scalar = scalar.bound;
  report.scalar_alpha = scalar.alpha_star;
  report.scalar_case = scalar.kind;
  report.scalar_certificate.lambda = Vector::Constant(p.dimension(), scalar.alpha_star);
  report.scalar_certificate.min_eig_margin =
      p.spectrum().min_eigenvalue() - scalar.alpha_star;
  report.f_tr = trust_region_bound(p);
  const DualGainBound rhs = dual_gain_bound(np);
  report.gain_bound_uncorrected = rhs.uncorrected;
  report.gain_bound = rhs.corrected;
  return report;
}

}  // namespace intquad
