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

#ifndef INTQUAD_EXACT_H_
#define INTQUAD_EXACT_H_

#include <cstdint>
#include <optional>

#include "intquad/model.h"
#include "intquad/numkernel.h"

namespace intquad {

struct EnumStats {
  // Assignments that passed the radius test, summed over all levels.
  std::int64_t nodes_visited = 0;
  std::int64_t incumbent_updates = 0;
  bool proved_optimal = false;
  bool budget_hit = false;
};

struct ExactResult {
  // False when no lattice point attains the initial bound (the bound was
  // below the optimum) and no initial point was supplied.
  bool found = false;
  IntVector x;
  double value = 0.0;
  EnumStats stats;
};

struct ExactConfig {
  // Any valid upper bound on the optimum; 0 always works since f(0) = 0 for
  // offset-free problems.
  double initial_ub = 0.0;
  // Optional point attaining initial_ub, reported if nothing better exists.
  std::optional<IntVector> initial_x;
  // Negative means unlimited.
  std::int64_t node_budget = -1;
};

// Depth-first ellipsoid enumeration. With P = R^T R (Cholesky),
// f(x) = |R (x - x_cts)|^2 + f_cts, levels run from the last coordinate to
// the first, and candidates at each level are visited in zig-zag order
// around the conditional center. The squared radius is best - f_cts and
// shrinks on strict improvement; the first point found is accepted when it
// attains the initial bound. Throws std::invalid_argument unless P is
// positive definite (min eigenvalue > 1e-8 w_max).
ExactResult solve_exact(const Problem& p, const ExactConfig& cfg);

inline ExactResult solve_exact(const Problem& p, double initial_ub = 0.0,
                               std::int64_t node_budget = -1) {
  ExactConfig cfg;
  cfg.initial_ub = initial_ub;
  cfg.node_budget = node_budget;
  return solve_exact(p, cfg);
}

struct BruteForceResult {
  IntVector x;
  double value = 0.0;
  std::int64_t points = 0;
};

// Exhaustive scan of the box |x_i - x_cts_i| <= sqrt((ub - f_cts) / w_min)
// with ub = min(0, f(0)). Ties go to the lexicographically smallest x. Rejects
// n > 8, singular P and boxes with more than 1e7 points.
BruteForceResult brute_force(const Problem& p);

}  // namespace intquad

#endif  // INTQUAD_EXACT_H_
