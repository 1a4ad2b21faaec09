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

#ifndef INTQUAD_BOUNDS_H_
#define INTQUAD_BOUNDS_H_

#include <optional>

#include "intquad/model.h"
#include "intquad/numkernel.h"

namespace intquad {

enum class ScalarDualCase { kIntegerCts, kInteriorRoot, kBoundaryLimit, kSingularP };

const char* to_string(ScalarDualCase c);

struct ScalarDualResult {
  double alpha_star = 0.0;
  // g(alpha_star) plus the normalization offset, i.e. in original units.
  double bound = 0.0;
  ScalarDualCase kind = ScalarDualCase::kInteriorRoot;
};

// Lagrangian dual bound restricted to lambda = alpha * 1, i.e. the minimum
// of f outside the sphere through every vertex of the unit cube.
//
// With P = Q diag(w) Q^T, qt = Q^T q and s = Q^T 1, the dual function is
//   g(alpha)  = -sum_i (qt_i + alpha s_i / 2)^2 / (w_i - alpha)
//   g'(alpha) = n/4 - sum_i ((qt_i + w_i s_i / 2) / (w_i - alpha))^2
// on [0, w_min). g' is decreasing, so the maximizer is found by bisection
// on g'. A negative `tol` selects the default 1e-10 * n/4.
ScalarDualResult scalar_dual_bound(const NormalizedProblem& np, double tol = -1.0);

// g(alpha) + value_offset for alpha in [0, w_min).
double scalar_dual_value(const NormalizedProblem& np, double alpha);
// g'(alpha) for alpha in [0, w_min).
double scalar_dual_derivative(const NormalizedProblem& np, double alpha);

// Minimum of f outside the ball |x - x_cts|^2 >= |x_cts - x_rnd|^2, which is
// f_cts + w_min |x_cts - x_rnd|^2. Throws std::invalid_argument when q is
// outside the range of P.
double trust_region_bound(const Problem& p);

// Guaranteed gain of the dual bound over f_cts. Both share the factor
// n w_min^2 / (4 w_max) and differ in how the distance d = |x_cts - 1/2|
// enters: `uncorrected` uses (1 - d^2/(n/4))^2, `corrected` uses
// (1 - d / sqrt(n/4))^2. Only `corrected` is implied by the scalar bound;
// `uncorrected` can exceed the actual gain (e.g. P = I2, x_cts = (0.6, 0.6)).
struct DualGainBound {
  double uncorrected = 0.0;
  double corrected = 0.0;
};

DualGainBound dual_gain_bound(const NormalizedProblem& np);

struct DualCheck {
  // g(lambda) + offset when valid, -infinity otherwise.
  double bound = 0.0;
  bool valid = false;
  // Smallest eigenvalue of P - diag(lambda).
  double min_eig_margin = 0.0;
};

// Evaluates the Lagrangian dual function
//   g(lambda) = -(q + lambda/2)^T (P - diag(lambda))^+ (q + lambda/2)
// at an arbitrary point. The point is valid iff lambda >= 0,
// P - diag(lambda) has min eigenvalue >= -psd_tol * w_max(P), and
// q + lambda/2 lies in the range of P - diag(lambda). Every valid point is a
// lower bound on the integer optimum; this is the only route by which dual
// solver output becomes a reported bound.
DualCheck certify_dual(const Problem& p, const Vector& lambda, double psd_tol);

struct BoundCertificate {
  Vector lambda;
  double min_eig_margin = 0.0;
};

// All lower bounds in original units.
struct BoundReport {
  double f_cts = 0.0;
  double f_scalar = 0.0;
  double f_tr = 0.0;
  std::optional<double> f_sdp;
  double gain_bound_uncorrected = 0.0;
  double gain_bound = 0.0;
  double scalar_alpha = 0.0;
  ScalarDualCase scalar_case = ScalarDualCase::kInteriorRoot;
  BoundCertificate scalar_certificate;
  std::optional<BoundCertificate> sdp_certificate;
  bool sdp_converged = false;
};

// Fills every field except the SDP ones (see attach_sdp in sdp.h).
BoundReport bound_report(const Problem& p, const NormalizedProblem& np);

}  // namespace intquad

#endif  // INTQUAD_BOUNDS_H_
