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
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace intquad {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SpectralData sym_eig(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw std::invalid_argument("sym_eig: matrix must be square and nonempty");
  }
  if (!s.allFinite()) {
    throw std::invalid_argument("sym_eig: matrix has non-finite entries");
  }
  const Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("sym_eig: eigensolver did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  SpectralData out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Matrix psd_sqrt_factor(const Matrix& s) {
  const SpectralData spec = sym_eig(s);
  const double tolerated = -1e-6 * std::max(1.0, spec.max_eigenvalue());
  if (spec.min_eigenvalue() < tolerated) {
    throw std::invalid_argument("psd_sqrt_factor: matrix is not a covariance");
  }
  const Vector root = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return spec.eigenvectors * root.asDiagonal();
}

PinvSolveResult pinv_solve(const SpectralData& spectrum, const Vector& v,
                           double rank_tol) {
  if (v.size() != spectrum.dimension()) {
    throw std::invalid_argument("pinv_solve: dimension mismatch");
  }
  const Matrix& q = spectrum.eigenvectors;
  const Vector& w = spectrum.eigenvalues;
  const double cutoff = rank_tol * std::max(w(0), 0.0);
  const Vector coeffs = q.transpose() * v;
  Vector scaled = Vector::Zero(coeffs.size());
  double dropped_sq = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    if (w(i) > cutoff) {
      scaled(i) = coeffs(i) / w(i);
    } else {
      dropped_sq += coeffs(i) * coeffs(i);
    }
  }
  PinvSolveResult out;
  out.solution = q * scaled;
  // The residual S x - v is exactly the part of v in the dropped eigenspace.
  out.in_range = std::sqrt(dropped_sq) <= 1e-8 * std::max(1.0, v.norm());
  return out;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed),
      index_(index),
      key_(splitmix64(seed ^ splitmix64(index * kGolden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Vector gaussian(RandomStream& stream, int count) {
  Vector out(count);
  for (int i = 0; i < count; ++i) out(i) = stream.gaussian();
  return out;
}

Vector gaussian(std::uint64_t seed, std::uint64_t index, int count) {
  RandomStream stream(seed, index);
  return gaussian(stream, count);
}

}  // namespace intquad
