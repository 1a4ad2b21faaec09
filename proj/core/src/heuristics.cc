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

#include "intquad/heuristics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace intquad {

namespace {

// Moves gaining less than this fraction of P_ii count as non-improving.
constexpr double kMoveTolerance = 1e-12;

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const char* to_string(IncumbentSource s) {
  switch (s) {
    case IncumbentSource::kZero:
      return "zero";
    case IncumbentSource::kRnd:
      return "rnd";
    case IncumbentSource::kRndOneOpt:
      return "rnd_oneopt";
    case IncumbentSource::kSample:
      return "sample";
    case IncumbentSource::kSampleOneOpt:
      return "sample_oneopt";
  }
  return "unknown";
}

bool better_than(const Incumbent& a, const Incumbent& b) {
  if (a.value != b.value) return a.value < b.value;
  return std::lexicographical_compare(a.x.begin(), a.x.end(), b.x.begin(), b.x.end());
}

OneOptResult one_opt(const Problem& p, const IntVector& x0, std::int64_t cap) {
  const int n = p.dimension();
  if (x0.size() != n) throw std::invalid_argument("one_opt: dimension mismatch");
  if (cap < 0) cap = 1000 * static_cast<std::int64_t>(n);

  const Matrix& pm = p.P();
  const Vector diag = pm.diagonal();
  OneOptResult out;
  out.x = x0;
  Vector g = gradient(p, x0);
  const double grad_scale = 1e-9 * (1.0 + p.q().cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    if (diag(i) <= 0.0 && std::abs(g(i)) > grad_scale) {
      throw std::domain_error("one_opt: zero curvature with nonzero gradient; f is unbounded");
    }
  }

  while (true) {
    int best_i = -1;
    double best_delta = 0.0;
    double best_c = 0.0;
    for (int i = 0; i < n; ++i) {
      if (diag(i) <= 0.0) continue;
      const double c = std::round(-g(i) / (2.0 * diag(i)));
      if (c == 0.0) continue;
      const double delta = c * c * diag(i) + c * g(i);
      if (delta < -kMoveTolerance * diag(i) && delta < best_delta) {
        best_delta = delta;
        best_i = i;
        best_c = c;
      }
    }
    if (best_i < 0) break;
    if (out.moves >= cap) {
      out.capped = true;
      break;
    }
    out.x(best_i) += static_cast<std::int64_t>(best_c);
    g += (2.0 * best_c) * pm.col(best_i);
    ++out.moves;
  }
  return out;
}

IntVector sample_candidate(const GaussianSampler& sampler, RandomStream& stream) {
  const Vector w = gaussian(stream, static_cast<int>(sampler.factor.cols()));
  return round_to_lattice(sampler.mean + sampler.factor * w);
}

SearchResult randomized_search(const Problem& original, const NormalizedProblem& np,
                               const GaussianSampler& sampler, const SearchConfig& cfg) {
  const int n = original.dimension();
  if (sampler.mean.size() != n || sampler.factor.rows() != n) {
    throw std::invalid_argument("randomized_search: sampler dimension mismatch");
  }
  const int samples = cfg.samples < 0 ? 3 * n : cfg.samples;

  SearchResult out;
  out.best = Incumbent{IntVector::Zero(n), evaluate(original, IntVector(IntVector::Zero(n))),
                       IncumbentSource::kZero};
  out.best_without_one_opt = out.best;
  out.trace.reserve(samples);

  for (int k = 1; k <= samples; ++k) {
    RandomStream stream(cfg.seed, static_cast<std::uint64_t>(k));
    const IntVector inner_x = sample_candidate(sampler, stream);
    Incumbent sample{np.to_original(inner_x), 0.0, IncumbentSource::kSample};
    sample.value = evaluate(original, sample.x);
    if (better_than(sample, out.best_without_one_opt)) out.best_without_one_opt = sample;
    if (better_than(sample, out.best)) out.best = sample;

    TraceRow row{.k = k,
                 .sample_value = sample.value,
                 .oneopt_value = std::numeric_limits<double>::quiet_NaN(),
                 .running_best = 0.0};
    if (cfg.one_opt) {
      const OneOptResult descent = one_opt(np.inner, inner_x, cfg.one_opt_cap);
      out.one_opt_moves += descent.moves;
      ++out.one_opt_starts;
      Incumbent refined{np.to_original(descent.x), 0.0, IncumbentSource::kSampleOneOpt};
      refined.value = evaluate(original, refined.x);
      row.oneopt_value = refined.value;
      if (better_than(refined, out.best)) out.best = refined;
    }
    row.running_best = out.best.value;
    out.trace.push_back(row);
  }
  return out;
}

RoundingResult round_and_descend(const Problem& p, std::int64_t cap) {
  const ContinuousInfo info = continuous_info(p);
  RoundingResult out;
  out.rounded = Incumbent{info.x_rnd, info.f_rnd, IncumbentSource::kRnd};
  const OneOptResult descent = one_opt(p, info.x_rnd, cap);
  out.descended = Incumbent{descent.x, evaluate(p, descent.x), IncumbentSource::kRndOneOpt};
  out.moves = descent.moves;
  return out;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "k,sample_value,oneopt_value,running_best\n";
  for (const TraceRow& row : trace) {
    os << row.k << ',' << format_double(row.sample_value) << ','
       << format_double(row.oneopt_value) << ',' << format_double(row.running_best) << '\n';
  }
}

}  // namespace intquad
