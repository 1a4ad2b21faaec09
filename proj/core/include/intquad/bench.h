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

#ifndef INTQUAD_BENCH_H_
#define INTQUAD_BENCH_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "intquad/model.h"
#include "intquad/sdp.h"

namespace intquad {

enum class InstanceMode { kGaussianIls, kFixedSpectrum };

struct InstanceSpec {
  int n = 1;
  // Rows of A for kGaussianIls; negative selects 2 n.
  int m = -1;
  InstanceMode mode = InstanceMode::kGaussianIls;
  // Eigenvalues for kFixedSpectrum, length n, nonnegative.
  std::vector<double> spectrum;
  std::uint64_t seed = 0;
  // Divide (P, q) by |f_cts| so that f_cts = -1.
  bool scale_to_unit = true;
};

// Random instance with q = -P x_c, x_c uniform on [0, 1)^n. kGaussianIls
// takes P = A^T A with A an m x n standard Gaussian matrix; kFixedSpectrum
// takes P = Q diag(w) Q^T with Q the orthogonal factor of a square Gaussian
// matrix. Attempt t draws from substream (seed, t); a draw with f_cts = 0 is
// retried with t + 1. Throws std::invalid_argument on an invalid spec.
Problem generate(const InstanceSpec& spec);

// Seed for the randomized rounding of the instance with the given seed.
std::uint64_t sampling_seed(std::uint64_t instance_seed);

// Order of the initial upper bounds in the node-count experiment.
enum NodeSource { kUbZero = 0, kUbRnd, kUbRndOneOpt, kUbBestOneOpt, kUbStar, kNodeSourceCount };

const char* to_string(NodeSource s);

struct PipelineConfig {
  SdpConfig sdp;
  // Negative selects 3 n.
  int samples = -1;
  // Exact solving runs for n <= exact_cutoff.
  int exact_cutoff = 50;
  // Enumerate once per initial bound source (requires exact solving).
  bool node_counts = false;
  // Margin above f_star for the tightest node-count bound.
  double star_margin = 1e-9;
};

struct InstanceResult {
  int n = 0;
  int index = 0;
  std::uint64_t seed = 0;
  double f_cts = 0.0;
  double f_scalar = 0.0;
  double f_tr = 0.0;
  double f_sdp = 0.0;
  double f_rnd = 0.0;
  double f_rnd_1opt = 0.0;
  double f_best = 0.0;
  double f_best_1opt = 0.0;
  std::optional<double> f_star;
  // f_best_1opt attains f_star exactly; meaningful only with f_star.
  bool optimal = false;
  double oneopt_iters = 0.0;
  double w_max = 0.0;
  double gain_bound_uncorrected = 0.0;
  double gain_bound = 0.0;
  bool sdp_converged = false;
  int sdp_iterations = 0;
  std::optional<std::array<std::int64_t, kNodeSourceCount>> nodes;
};

// Generates the instance and runs bounds, SDP, heuristics and, when
// enabled, exact enumeration.
InstanceResult run_instance(const InstanceSpec& spec, const PipelineConfig& cfg, int index = 0);

struct TableConfig {
  std::vector<int> sizes;
  int count = 100;
  std::uint64_t seed = 0;
  // 0 reads INTQUAD_THREADS, falling back to the hardware concurrency.
  int threads = 0;
  PipelineConfig pipeline;
};

struct TableRow {
  int n = 0;
  int count = 0;
  double mean_f_cts = 0.0;
  double mean_f_scalar = 0.0;
  double mean_f_tr = 0.0;
  double mean_f_sdp = 0.0;
  double mean_f_rnd = 0.0;
  double mean_f_rnd_1opt = 0.0;
  double mean_f_best = 0.0;
  double mean_f_best_1opt = 0.0;
  std::optional<double> mean_f_star;
  std::optional<double> frac_optimal;
  double mean_oneopt_iters = 0.0;
  std::optional<std::array<double, kNodeSourceCount>> mean_nodes;
};

struct InstanceFailure {
  int n = 0;
  int index = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct TableResult {
  std::vector<TableRow> rows;
  // Same aggregation with medians in place of means.
  std::vector<TableRow> medians;
  // Successful instances, ordered by (size, index).
  std::vector<InstanceResult> instances;
  std::vector<InstanceFailure> failures;
};

// Instance i of size n uses seed + i. Instances run on a thread pool and
// are reduced in index order, so output does not depend on the pool size.
// Failed instances are recorded and excluded from the rows.
TableResult run_table(const TableConfig& cfg);

// Thread count used by run_table for `requested` (see TableConfig).
int resolve_threads(int requested);

TableRow aggregate(int n, const std::vector<InstanceResult>& results, bool median = false);

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows);
// Same columns prefixed median_ instead of mean_.
void write_median_csv(std::ostream& os, const std::vector<TableRow>& rows);
void write_instances_csv(std::ostream& os, const std::vector<InstanceResult>& instances);

struct Histogram {
  // bin_count + 1 edges.
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
};

// Equal-width bins over [min, max]; the maximum falls in the last bin. All
// values equal give a single bin.
Histogram histogram(const std::vector<double>& values, int bin_count);

}  // namespace intquad

#endif  // INTQUAD_BENCH_H_
