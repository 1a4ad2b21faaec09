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

#ifndef INTQUAD_SDP_H_
#define INTQUAD_SDP_H_

#include "intquad/bounds.h"
#include "intquad/model.h"
#include "intquad/numkernel.h"

namespace intquad {

struct SdpConfig {
  int max_iters = 20000;
  double eps_abs = 1e-7;
  double eps_rel = 1e-7;
  double over_relaxation = 1.5;
  // Initial penalty; rebalanced against the residuals as the solve runs.
  double rho = 1.0;
};

// Primal point (X, x) of
//   minimize Tr(P X) + 2 q^T x  s.t.  diag(X) >= x,  [X x; x^T 1] >= 0
// in normalized coordinates.
struct RelaxationSolution {
  Matrix X;
  Vector x;
  // X - x x^T.
  Matrix sigma;
  // Tr(P X) + 2 q^T x + value_offset.
  double objective = 0.0;
};

struct DualCertificate {
  Vector lambda;
  // (q + lambda/2)^T (P - diag(lambda))^+ (q + lambda/2).
  double gamma = 0.0;
  // certify_dual(lambda) in original units; the only SDP number reported
  // as a lower bound.
  double certified_bound = 0.0;
  // objective - certified_bound.
  double kkt_gap = 0.0;
  double min_eig_margin = 0.0;
};

struct SdpResult {
  RelaxationSolution primal;
  DualCertificate dual;
  bool converged = false;
  int iterations = 0;
};

// Solves the semidefinite relaxation by ADMM on the lifted matrix
// Z = [X x; x^T 1]: one projection onto the PSD cone per iteration and one
// closed-form projection onto {Z_nn = 1, X_ii >= x_i}. The dual point is
// read off the multipliers of the diagonal rows and certified with
// certify_dual after contracting it into the PSD region. Warm-started from
// the scalar dual bound, whose certificate is also kept as a fallback, so
// the reported bound never drops below f_scalar.
SdpResult solve_relaxation(const NormalizedProblem& np, const SdpConfig& cfg = {});

struct CertifiedDual {
  // The multiplier that was certified.
  Vector lambda;
  DualCheck check;
};

// Best certified bound among contractions theta * max(lambda, 0) with
// theta <= 1 chosen just inside the region where P - theta diag(lambda) is
// PSD. check.valid is false if no contraction certifies.
CertifiedDual certify_contracted(const Problem& p, const Vector& lambda);

struct GaussianSampler {
  Vector mean;
  // L with L L^T = sigma (negative eigenvalues clamped).
  Matrix factor;
};

// Mean x and eigen square root of sigma. A sigma eigenvalue below -1e-4
// throws InvariantViolation.
GaussianSampler extract_sampler(const RelaxationSolution& sol);

// Copies the certified SDP bound and its certificate into `report`.
void attach_sdp(BoundReport& report, const SdpResult& result);

}  // namespace intquad

#endif  // INTQUAD_SDP_H_
