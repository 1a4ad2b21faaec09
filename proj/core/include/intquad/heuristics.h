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

#ifndef INTQUAD_HEURISTICS_H_
#define INTQUAD_HEURISTICS_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "intquad/model.h"
#include "intquad/numkernel.h"
#include "intquad/sdp.h"

namespace intquad {

enum class IncumbentSource { kZero, kRnd, kRndOneOpt, kSample, kSampleOneOpt };

const char* to_string(IncumbentSource s);

// Feasible integer point in original coordinates.
struct Incumbent {
  IntVector x;
  double value = 0.0;
  IncumbentSource source = IncumbentSource::kZero;
};

// Total order used for every best-point reduction: value, then
// lexicographic x.
bool better_than(const Incumbent& a, const Incumbent& b);

struct OneOptResult {
  IntVector x;
  std::int64_t moves = 0;
  bool capped = false;
};

// Greedy 1-opt descent. Each step picks the single-coordinate move
// x_i += c, c = round(-g_i / (2 P_ii)), with the most negative change
// c^2 P_ii + c g_i (lowest index on ties) and updates g = 2(Px + q) from
// column i of P. Stops when no move decreases f, i.e. diag(P) >= |g|.
// Coordinates with P_ii = 0 are skipped; a nonzero gradient there means f is
// unbounded and throws std::domain_error. A negative cap selects 1000 n.
OneOptResult one_opt(const Problem& p, const IntVector& x0, std::int64_t cap = -1);

// round(mean + L w), w drawn from `stream`.
IntVector sample_candidate(const GaussianSampler& sampler, RandomStream& stream);

struct SearchConfig {
  // Sample count; negative selects 3 n.
  int samples = -1;
  std::uint64_t seed = 0;
  bool one_opt = true;
  // Moves per start; negative selects 1000 n.
  std::int64_t one_opt_cap = -1;
};

struct TraceRow {
  int k = 0;
  double sample_value = 0.0;
  // NaN when 1-opt is disabled.
  double oneopt_value = 0.0;
  double running_best = 0.0;
};

struct SearchResult {
  // Best over {0} and all samples, plus their 1-opt points when enabled.
  Incumbent best;
  // Best over {0} and the raw samples only.
  Incumbent best_without_one_opt;
  std::vector<TraceRow> trace;
  std::int64_t one_opt_moves = 0;
  int one_opt_starts = 0;
  double mean_one_opt_moves() const {
    return one_opt_starts == 0 ? 0.0 : static_cast<double>(one_opt_moves) / one_opt_starts;
  }
};

// Randomized rounding from N(mean, L L^T). Sample k draws from substream
// (cfg.seed, k), so the result does not depend on evaluation order. The
// sampler lives in the normalized frame of `np`; incumbents are shifted back
// and evaluated on `original`.
SearchResult randomized_search(const Problem& original, const NormalizedProblem& np,
                               const GaussianSampler& sampler, const SearchConfig& cfg);

struct RoundingResult {
  Incumbent rounded;    // x_rnd
  Incumbent descended;  // 1-opt from x_rnd
  std::int64_t moves = 0;
};

RoundingResult round_and_descend(const Problem& p, std::int64_t cap = -1);

// CSV: k,sample_value,oneopt_value,running_best
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace intquad

#endif  // INTQUAD_HEURISTICS_H_
