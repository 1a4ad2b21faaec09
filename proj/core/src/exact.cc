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

#include "intquad/exact.h"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace intquad {

namespace {

constexpr double kDefiniteTolerance = 1e-8;

void require_definite(const Problem& p, const char* who) {
  const SpectralData& s = p.spectrum();
  if (!(s.min_eigenvalue() > kDefiniteTolerance * s.max_eigenvalue())) {
    throw std::invalid_argument(std::string(who) + ": P must be positive definite");
  }
}

class Enumerator {
 public:
  Enumerator(const Problem& p, const ContinuousInfo& info, const ExactConfig& cfg,
             ExactResult& out)
      : p_(p), n_(p.dimension()), c_(info.x_cts), f_cts_(info.f_cts), cfg_(cfg), out_(out) {
    Eigen::LLT<Matrix> llt(p.P());
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("solve_exact: Cholesky factorization failed");
    }
    r_ = llt.matrixU();
    x_ = IntVector::Zero(n_);
    partial_.assign(n_ + 1, 0.0);
    best_ = cfg.initial_ub;
    if (cfg.initial_x) {
      out_.found = true;
      out_.x = *cfg.initial_x;
      out_.value = evaluate(p, *cfg.initial_x);
      best_ = std::min(best_, out_.value);
    }
  }

  void run() {
    if (best_ - f_cts_ < 0.0) {
      out_.stats.proved_optimal = true;
      return;
    }
    descend(n_ - 1);
    out_.stats.proved_optimal = !out_.stats.budget_hit;
  }

 private:
  double radius2() const { return best_ - f_cts_; }

  bool inside(double partial) const {
    const double r2 = radius2();
    return partial <= r2 + 1e-10 * std::max(1.0, r2);
  }

  // Returns false when the node budget stops the search.
  bool descend(int k) {
    // Conditional center of coordinate k given x_{k+1..n-1}.
    double acc = 0.0;
    for (int j = k + 1; j < n_; ++j) {
      acc += r_(k, j) * (static_cast<double>(x_(j)) - c_(j));
    }
    const double rkk = r_(k, k);
    const double center = c_(k) - acc / rkk;
    const double start = std::round(center);
    const double step = center >= start ? 1.0 : -1.0;

    for (int t = 0;; ++t) {
      // Zig-zag: start, start+s, start-s, start+2s, ...
      const double offset = (t % 2 == 1 ? 1.0 : -1.0) * static_cast<double>((t + 1) / 2);
      const double cand = start + step * offset;
      const double d = rkk * (cand - center);
      const double partial = partial_[k + 1] + d * d;
      if (!inside(partial)) return true;
      if (cfg_.node_budget >= 0 && out_.stats.nodes_visited >= cfg_.node_budget) {
        out_.stats.budget_hit = true;
        return false;
      }
      ++out_.stats.nodes_visited;
      x_(k) = static_cast<std::int64_t>(cand);
      partial_[k] = partial;
      if (k == 0) {
        leaf();
      } else if (!descend(k - 1)) {
        return false;
      }
    }
  }

  void leaf() {
    const double value = evaluate(p_, x_);
    const bool accept = out_.found ? value < best_ : value <= best_;
    if (!accept) return;
    out_.found = true;
    out_.x = x_;
    out_.value = value;
    best_ = value;
    ++out_.stats.incumbent_updates;
  }

  const Problem& p_;
  const int n_;
  const Vector& c_;
  const double f_cts_;
  const ExactConfig& cfg_;
  ExactResult& out_;
  Matrix r_;
  IntVector x_;
  std::vector<double> partial_;
  double best_;
};

}  // namespace

ExactResult solve_exact(const Problem& p, const ExactConfig& cfg) {
  require_definite(p, "solve_exact");
  if (cfg.initial_x && cfg.initial_x->size() != p.dimension()) {
    throw std::invalid_argument("solve_exact: initial point dimension mismatch");
  }
  if (!std::isfinite(cfg.initial_ub)) {
    throw std::invalid_argument("solve_exact: initial upper bound must be finite");
  }
  const ContinuousInfo info = continuous_info(p);
  ExactResult out;
  Enumerator(p, info, cfg, out).run();
  return out;
}

BruteForceResult brute_force(const Problem& p) {
  const int n = p.dimension();
  if (n > 8) throw std::invalid_argument("brute_force: n must be at most 8");
  require_definite(p, "brute_force");
  const ContinuousInfo info = continuous_info(p);
  const double ub = std::min(0.0, evaluate(p, IntVector(IntVector::Zero(n))));
  const double half = std::sqrt(std::max(0.0, ub - info.f_cts) / p.spectrum().min_eigenvalue());

  IntVector lo(n), hi(n);
  double total = 1.0;
  for (int i = 0; i < n; ++i) {
    const double h = half * (1.0 + 1e-12) + 1e-12;
    lo(i) = static_cast<std::int64_t>(std::ceil(info.x_cts(i) - h));
    hi(i) = static_cast<std::int64_t>(std::floor(info.x_cts(i) + h));
    total *= static_cast<double>(hi(i) - lo(i) + 1);
  }
  if (total > 1e7) throw std::invalid_argument("brute_force: search box exceeds 1e7 points");

  BruteForceResult out;
  out.value = std::numeric_limits<double>::infinity();
  IntVector x = lo;
  while (true) {
    const double v = evaluate(p, x);
    ++out.points;
    if (v < out.value) {
      out.value = v;
      out.x = x;
    }
    // Odometer increment, last coordinate fastest: lexicographic order.
    int i = n - 1;
    while (i >= 0 && x(i) == hi(i)) {
      x(i) = lo(i);
      --i;
    }
    if (i < 0) break;
    ++x(i);
  }
  return out;
}

}  // namespace intquad
