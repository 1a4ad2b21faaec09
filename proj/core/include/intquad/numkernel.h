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

#ifndef INTQUAD_NUMKERNEL_H_
#define INTQUAD_NUMKERNEL_H_

#include <cstdint>

#include <Eigen/Core>

namespace intquad {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Eigendecomposition S = Q diag(w) Q^T with w sorted in descending order.
struct SpectralData {
  Vector eigenvalues;
  Matrix eigenvectors;

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
  double max_eigenvalue() const { return eigenvalues(0); }
  double min_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
};

// Symmetric eigendecomposition. The input is symmetrized as (S + S^T)/2
// before factoring. Throws std::invalid_argument on non-square or
// non-finite input.
SpectralData sym_eig(const Matrix& s);

// Returns L with L L^T = S, built as Q diag(sqrt(max(w, 0))). Eigenvalues
// below -1e-6 * max(1, w_max) mean S is not a covariance and throw
// std::invalid_argument; smaller negative values are clamped to zero.
Matrix psd_sqrt_factor(const Matrix& s);

struct PinvSolveResult {
  Vector solution;
  // True when |S * solution - v| <= 1e-8 * max(1, |v|).
  bool in_range = false;
};

// Moore-Penrose solve S^+ v. Eigenvalues at or below
// rank_tol * max(w_max, 0) are treated as zero.
PinvSolveResult pinv_solve(const SpectralData& spectrum, const Vector& v,
                           double rank_tol);

// Counter-based random stream. Every (seed, index) pair names an
// independent substream; the k-th draw of a substream depends only on
// (seed, index, k), so results do not depend on thread count or on how
// draws from different substreams interleave.
//
// Draw k is SplitMix64 evaluated at position k of a per-substream key.
// Uniforms take the top 53 bits. Normals use the Box-Muller transform on
// consecutive uniform pairs, returning the cosine branch first and the
// sine branch on the following call.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  double gaussian();

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// `count` i.i.d. standard normals from a fresh substream (seed, index).
Vector gaussian(std::uint64_t seed, std::uint64_t index, int count);

// Same, continuing an existing stream.
Vector gaussian(RandomStream& stream, int count);

}  // namespace intquad

#endif  // INTQUAD_NUMKERNEL_H_
