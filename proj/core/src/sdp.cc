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

#include "intquad/sdp.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "intquad/errors.h"

namespace intquad {

namespace {

constexpr int kCheckEvery = 10;
constexpr int kCertifyEvery = 200;
constexpr int kRebalanceEvery = 50;
constexpr double kRebalanceRatio = 5.0;
constexpr double kSigmaNegativeLimit = -1e-4;

// Projection onto the PSD cone, keeping only the positive eigenpairs.
Matrix project_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const Vector& w = solver.eigenvalues();
  Eigen::Index first_positive = w.size();
  while (first_positive > 0 && w(first_positive - 1) > 0.0) --first_positive;
  const Eigen::Index k = w.size() - first_positive;
  if (k == 0) return Matrix::Zero(m.rows(), m.cols());
  const auto v = solver.eigenvectors().rightCols(k);
  return v * w.tail(k).asDiagonal() * v.transpose();
}

// Projection onto {Z_nn = 1, Z_ii >= Z_in for i < n} in the Frobenius norm.
// The off-diagonal entry appears twice, so a violated pair (a, b) moves to
// the common value (a + 2b) / 3.
void project_affine(Matrix& z) {
  const Eigen::Index last = z.rows() - 1;
  z(last, last) = 1.0;
  for (Eigen::Index i = 0; i < last; ++i) {
    const double a = z(i, i);
    const double b = 0.5 * (z(i, last) + z(last, i));
    if (a < b) {
      const double v = (a + 2.0 * b) / 3.0;
      z(i, i) = v;
      z(i, last) = v;
      z(last, i) = v;
    }
  }
}

double objective_of(const Problem& p, const Matrix& x_mat, const Vector& x, double offset) {
  return (p.P().cwiseProduct(x_mat)).sum() + 2.0 * p.q().dot(x) + offset;
}

// Rescales a PSD lifted matrix to Z_nn = 1 and raises diag(X) to x where
// needed; both steps keep the matrix PSD, so the result is feasible.
RelaxationSolution repair_primal(const NormalizedProblem& np, const Matrix& z) {
  const Eigen::Index n = np.inner.dimension();
  const double corner = z(n, n);
  RelaxationSolution sol;
  if (!(corner > 1e-8)) {
    sol.x = np.x_cts;
    sol.X = sol.x * sol.x.transpose();
    sol.X.diagonal() = sol.X.diagonal().cwiseMax(sol.x);
  } else {
    const Matrix zs = z / corner;
    sol.x = zs.col(n).head(n);
    sol.X = 0.5 * (zs.topLeftCorner(n, n) + zs.topLeftCorner(n, n).transpose());
    for (Eigen::Index i = 0; i < n; ++i) sol.X(i, i) = std::max(sol.X(i, i), sol.x(i));
  }
  sol.sigma = sol.X - sol.x * sol.x.transpose();
  sol.objective = objective_of(np.inner, sol.X, sol.x, np.value_offset);
  return sol;
}

// Largest theta in [0, 1] with P - theta diag(lambda) PSD.
double psd_contraction_limit(const Problem& p, const Vector& lambda) {
  const SpectralData& spec = p.spectrum();
  if (lambda.maxCoeff() <= 0.0) return 1.0;
  if (spec.min_eigenvalue() > kRankTolerance * spec.max_eigenvalue()) {
    // P - theta D >= 0  <=>  theta * lambda_max(P^{-1/2} D P^{-1/2}) <= 1.
    const Vector inv_root = spec.eigenvalues.cwiseSqrt().cwiseInverse();
    const Matrix b = spec.eigenvectors * inv_root.asDiagonal() * spec.eigenvectors.transpose();
    const Vector root_lambda = lambda.cwiseSqrt();
    const Matrix k = root_lambda.asDiagonal() * (b * b) * root_lambda.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k, Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    return top <= 1.0 ? 1.0 : 1.0 / top;
  }
  auto min_eig = [&](double theta) {
    Matrix m = p.P();
    m.diagonal() -= theta * lambda;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  };
  if (min_eig(1.0) >= 0.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (min_eig(mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

CertifiedDual certify_contracted(const Problem& p, const Vector& lambda) {
  const Vector clipped = lambda.cwiseMax(0.0);
  const double top = psd_contraction_limit(p, clipped);
  constexpr std::array<double, 7> kBackoff = {0.0, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2};
  CertifiedDual best;
  best.lambda = Vector::Zero(clipped.size());
  best.check.bound = -std::numeric_limits<double>::infinity();
  for (double backoff : kBackoff) {
    Vector candidate = (top * (1.0 - backoff)) * clipped;
    const DualCheck check = certify_dual(p, candidate, 0.0);
    if (check.valid && check.bound > best.check.bound) {
      best.lambda = std::move(candidate);
      best.check = check;
    }
  }
  return best;
}

SdpResult solve_relaxation(const NormalizedProblem& np, const SdpConfig& cfg) {
  if (cfg.max_iters <= 0 || !(cfg.eps_abs > 0.0) || !(cfg.eps_rel > 0.0) ||
      !(cfg.over_relaxation > 0.0) || !(cfg.rho > 0.0)) {
    throw std::invalid_argument("solve_relaxation: configuration values must be positive");
  }
  const Problem& p = np.inner;
  const Eigen::Index n = p.dimension();
  SdpResult result;

  if (np.is_integer_cts) {
    result.primal.x = np.x_cts;
    result.primal.X = np.x_cts * np.x_cts.transpose();
    result.primal.sigma = Matrix::Zero(n, n);
    result.primal.objective = np.f_cts();
    const Vector zero = Vector::Zero(n);
    const DualCheck check = certify_dual(p, zero, 0.0);
    result.dual.lambda = zero;
    result.dual.certified_bound = check.bound + np.value_offset;
    result.dual.gamma = -check.bound;
    result.dual.min_eig_margin = check.min_eig_margin;
    result.dual.kkt_gap = result.primal.objective - result.dual.certified_bound;
    result.converged = true;
    return result;
  }

  // Bounds below are in inner units (no value_offset) until the end.
  // Fallback certificate: the scalar dual point, or lambda = 0.
  const ScalarDualResult scalar = scalar_dual_bound(np);
  CertifiedDual best{Vector::Constant(n, scalar.alpha_star), {}};
  best.check = certify_dual(p, best.lambda, 0.0);
  if (!best.check.valid) best = certify_contracted(p, best.lambda);
  if (!best.check.valid) {
    best.lambda.setZero();
    best.check = certify_dual(p, best.lambda, 0.0);
  }
  if (!best.check.valid) {
    throw InvariantViolation("solve_relaxation: no valid dual starting point");
  }

  // Work in units where the cost matrix has unit scale.
  const double scale = std::max(p.spectrum().max_eigenvalue(), p.q().cwiseAbs().maxCoeff());
  Matrix cost(n + 1, n + 1);
  cost.topLeftCorner(n, n) = p.P() / scale;
  cost.col(n).head(n) = p.q() / scale;
  cost.row(n).head(n) = p.q().transpose() / scale;
  cost(n, n) = 0.0;

  // Primal warm start: x = x_cts with sigma = diag(x (1 - x)), which is
  // feasible. Dual warm start: the fallback certificate.
  Matrix w = Matrix::Zero(n + 1, n + 1);
  {
    const Vector& xc = np.x_cts;
    w.topLeftCorner(n, n) = xc * xc.transpose();
    w.topLeftCorner(n, n).diagonal() = xc;
    w.col(n).head(n) = xc;
    w.row(n).head(n) = xc.transpose();
    w(n, n) = 1.0;
  }
  double rho = cfg.rho;
  Matrix u = Matrix::Zero(n + 1, n + 1);
  {
    const Vector lam = best.lambda / scale;
    u.topLeftCorner(n, n).diagonal() = -lam / rho;
    u.col(n).head(n) = 0.5 * lam / rho;
    u.row(n).head(n) = 0.5 * lam.transpose() / rho;
    u(n, n) = -best.check.bound / scale / rho;
  }

  const double alpha = cfg.over_relaxation;
  const double size_term = cfg.eps_abs * static_cast<double>(n + 1);
  Matrix z = w;
  Matrix w_old(n + 1, n + 1);
  int iter = 0;
  bool converged = false;
  for (iter = 1; iter <= cfg.max_iters; ++iter) {
    z = project_psd(w - u - cost / rho);
    const Matrix z_relaxed = alpha * z + (1.0 - alpha) * w;
    w_old = w;
    w = z_relaxed + u;
    project_affine(w);
    u += z_relaxed - w;

    if (iter % kCheckEvery != 0 && iter != cfg.max_iters) continue;

    const double r_prim = (z - w).norm();
    const double r_dual = rho * (w - w_old).norm();
    const double prim_scale = std::max(z.norm(), w.norm());
    const double dual_scale = rho * u.norm();
    const bool residuals_ok = r_prim <= size_term + cfg.eps_rel * prim_scale &&
                              r_dual <= size_term + cfg.eps_rel * dual_scale;

    if (residuals_ok || iter % kCertifyEvery == 0 || iter == cfg.max_iters) {
      // Multipliers of the diagonal rows sit on diag(U) with negative sign.
      const Vector lambda = (-rho * scale) * u.topLeftCorner(n, n).diagonal();
      CertifiedDual candidate = certify_contracted(p, lambda);
      if (candidate.check.valid && candidate.check.bound > best.check.bound) {
        best = std::move(candidate);
      }
      if (residuals_ok) {
        const RelaxationSolution primal = repair_primal(np, z);
        const double gap = primal.objective - (best.check.bound + np.value_offset);
        const double allowed =
            10.0 * std::max(cfg.eps_abs, cfg.eps_rel * std::abs(primal.objective));
        if (gap <= allowed) {
          converged = true;
          break;
        }
      }
    }

    if (iter % kRebalanceEvery == 0 && prim_scale > 0.0 && dual_scale > 0.0 &&
        r_prim > 0.0 && r_dual > 0.0) {
      const double ratio = (r_prim / prim_scale) / (r_dual / dual_scale);
      if (ratio > kRebalanceRatio || ratio < 1.0 / kRebalanceRatio) {
        const double new_rho = std::clamp(rho * std::sqrt(ratio), 1e-6, 1e6);
        u *= rho / new_rho;
        rho = new_rho;
      }
    }
  }

  result.iterations = std::min(iter, cfg.max_iters);
  result.converged = converged;
  result.primal = repair_primal(np, z);
  result.dual.lambda = best.lambda;
  result.dual.gamma = -best.check.bound;
  result.dual.certified_bound = best.check.bound + np.value_offset;
  result.dual.min_eig_margin = best.check.min_eig_margin;
  result.dual.kkt_gap = result.primal.objective - result.dual.certified_bound;
  return result;
}

GaussianSampler extract_sampler(const RelaxationSolution& sol) {
  const Eigen::Index n = sol.x.size();
  if (sol.sigma.rows() != n || sol.sigma.cols() != n) {
    throw std::invalid_argument("extract_sampler: sigma dimension mismatch");
  }
  const SpectralData spec = sym_eig(sol.sigma);
  if (spec.min_eigenvalue() < kSigmaNegativeLimit) {
    throw InvariantViolation("extract_sampler: covariance has eigenvalue " +
                             std::to_string(spec.min_eigenvalue()));
  }
  const double clamp = 1e-8 * std::max(1.0, sol.sigma.trace() / static_cast<double>(n));
  Vector root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = spec.eigenvalues(i);
    root(i) = v > clamp ? std::sqrt(v) : 0.0;
  }
  return {.mean = sol.x, .factor = spec.eigenvectors * root.asDiagonal()};
}

void attach_sdp(BoundReport& report, const SdpResult& result) {
  report.f_sdp = result.dual.certified_bound;
  report.sdp_certificate = BoundCertificate{
      .lambda = result.dual.lambda, .min_eig_margin = result.dual.min_eig_margin};
  report.sdp_converged = result.converged;
}

}  // namespace intquad
