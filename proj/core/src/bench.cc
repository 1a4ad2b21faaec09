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

#include "intquad/bench.h"

#include <Eigen/QR>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "intquad/bounds.h"
#include "intquad/exact.h"
#include "intquad/heuristics.h"

namespace intquad {

namespace {

constexpr std::uint64_t kSamplingSalt = 0x51ed27d3a9c6b2f1ULL;
constexpr int kMaxAttempts = 16;

Matrix gaussian_matrix(RandomStream& stream, int rows, int cols) {
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = stream.gaussian();
  }
  return a;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

void write_rows(std::ostream& os, const std::vector<TableRow>& rows, const char* prefix) {
  os << "n,count";
  for (const char* col : {"f_cts", "f_scalar", "f_tr", "f_sdp", "f_rnd", "f_rnd_1opt", "f_best",
                          "f_best_1opt", "f_star"}) {
    os << ',' << prefix << col;
  }
  os << ",frac_optimal," << prefix << "oneopt_iters\n";
  for (const TableRow& r : rows) {
    os << r.n << ',' << r.count << ',' << fmt(r.mean_f_cts) << ',' << fmt(r.mean_f_scalar) << ','
       << fmt(r.mean_f_tr) << ',' << fmt(r.mean_f_sdp) << ',' << fmt(r.mean_f_rnd) << ','
       << fmt(r.mean_f_rnd_1opt) << ',' << fmt(r.mean_f_best) << ',' << fmt(r.mean_f_best_1opt)
       << ',' << fmt(r.mean_f_star) << ',' << fmt(r.frac_optimal) << ','
       << fmt(r.mean_oneopt_iters) << '\n';
  }
}

}  // namespace

Problem generate(const InstanceSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw std::invalid_argument("generate: n must be positive");
  const int m = spec.m < 0 ? 2 * n : spec.m;
  if (spec.mode == InstanceMode::kGaussianIls && m < n) {
    throw std::invalid_argument("generate: m must be at least n");
  }
  if (spec.mode == InstanceMode::kFixedSpectrum) {
    if (static_cast<int>(spec.spectrum.size()) != n) {
      throw std::invalid_argument("generate: spectrum length must equal n");
    }
    for (double w : spec.spectrum) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("generate: spectrum must be finite and nonnegative");
      }
    }
  }

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RandomStream stream(spec.seed, static_cast<std::uint64_t>(attempt));
    Matrix p;
    if (spec.mode == InstanceMode::kGaussianIls) {
      const Matrix a = gaussian_matrix(stream, m, n);
      p = a.transpose() * a;
    } else {
      const Matrix g = gaussian_matrix(stream, n, n);
      const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
      const Vector w = Eigen::Map<const Vector>(spec.spectrum.data(), n);
      p = q * w.asDiagonal() * q.transpose();
    }
    Vector xc(n);
    for (int i = 0; i < n; ++i) xc(i) = stream.uniform();
    const double scale = xc.dot(p * xc);
    if (!(scale > 0.0) || !std::isfinite(scale)) continue;
    Vector q = -(p * xc);
    if (spec.scale_to_unit) {
      p /= scale;
      q /= scale;
    }
    p = 0.5 * (p + p.transpose());
    try {
      return Problem(std::move(p), std::move(q), 0.0);
    } catch (const std::invalid_argument&) {
      // Zero or indefinite draw; try the next substream.
    }
  }
  throw std::runtime_error("generate: no usable draw");
}

std::uint64_t sampling_seed(std::uint64_t instance_seed) { return instance_seed ^ kSamplingSalt; }

const char* to_string(NodeSource s) {
  switch (s) {
    case kUbZero:
      return "zero";
    case kUbRnd:
      return "rnd";
    case kUbRndOneOpt:
      return "rnd_1opt";
    case kUbBestOneOpt:
      return "best_1opt";
    case kUbStar:
      return "star";
    case kNodeSourceCount:
      break;
  }
  return "unknown";
}

InstanceResult run_instance(const InstanceSpec& spec, const PipelineConfig& cfg, int index) {
  const Problem p = generate(spec);
  const int n = p.dimension();
  const NormalizedProblem np = normalize(p);
  BoundReport report = bound_report(p, np);
  const SdpResult sdp = solve_relaxation(np, cfg.sdp);
  attach_sdp(report, sdp);
  const GaussianSampler sampler = extract_sampler(sdp.primal);

  const RoundingResult rounding = round_and_descend(p);
  SearchConfig search_cfg;
  search_cfg.samples = cfg.samples;
  search_cfg.seed = sampling_seed(spec.seed);
  search_cfg.one_opt = true;
  const SearchResult search = randomized_search(p, np, sampler, search_cfg);

  InstanceResult r;
  r.n = n;
  r.index = index;
  r.seed = spec.seed;
  r.f_cts = report.f_cts;
  r.f_scalar = report.f_scalar;
  r.f_tr = report.f_tr;
  r.f_sdp = *report.f_sdp;
  r.f_rnd = rounding.rounded.value;
  r.f_rnd_1opt = rounding.descended.value;
  r.f_best = search.best_without_one_opt.value;
  r.f_best_1opt = search.best.value;
  r.oneopt_iters = search.mean_one_opt_moves();
  r.w_max = p.spectrum().max_eigenvalue();
  r.gain_bound_uncorrected = report.gain_bound_uncorrected;
  r.gain_bound = report.gain_bound;
  r.sdp_converged = sdp.converged;
  r.sdp_iterations = sdp.iterations;

  if (n <= cfg.exact_cutoff) {
    ExactConfig ecfg;
    ecfg.initial_ub = search.best.value;
    ecfg.initial_x = search.best.x;
    const ExactResult exact = solve_exact(p, ecfg);
    r.f_star = exact.value;
    r.optimal = search.best.value <= exact.value;
    if (cfg.node_counts) {
      const std::array<double, kNodeSourceCount> ubs = {
          0.0, r.f_rnd, r.f_rnd_1opt, r.f_best_1opt, exact.value + cfg.star_margin};
      std::array<std::int64_t, kNodeSourceCount> nodes{};
      for (int s = 0; s < kNodeSourceCount; ++s) {
        ExactConfig c;
        c.initial_ub = ubs[s];
        nodes[s] = solve_exact(p, c).stats.nodes_visited;
      }
      r.nodes = nodes;
    }
  }
  return r;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INTQUAD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

TableRow aggregate(int n, const std::vector<InstanceResult>& results, bool median) {
  TableRow row;
  row.n = n;
  row.count = static_cast<int>(results.size());
  if (results.empty()) return row;
  const auto reduce = [&](const std::function<double(const InstanceResult&)>& get) {
    std::vector<double> v;
    v.reserve(results.size());
    for (const InstanceResult& r : results) v.push_back(get(r));
    return median ? median_of(std::move(v)) : mean_of(v);
  };
  row.mean_f_cts = reduce([](const InstanceResult& r) { return r.f_cts; });
  row.mean_f_scalar = reduce([](const InstanceResult& r) { return r.f_scalar; });
  row.mean_f_tr = reduce([](const InstanceResult& r) { return r.f_tr; });
  row.mean_f_sdp = reduce([](const InstanceResult& r) { return r.f_sdp; });
  row.mean_f_rnd = reduce([](const InstanceResult& r) { return r.f_rnd; });
  row.mean_f_rnd_1opt = reduce([](const InstanceResult& r) { return r.f_rnd_1opt; });
  row.mean_f_best = reduce([](const InstanceResult& r) { return r.f_best; });
  row.mean_f_best_1opt = reduce([](const InstanceResult& r) { return r.f_best_1opt; });
  row.mean_oneopt_iters = reduce([](const InstanceResult& r) { return r.oneopt_iters; });

  std::vector<double> star, opt;
  for (const InstanceResult& r : results) {
    if (!r.f_star) continue;
    star.push_back(*r.f_star);
    opt.push_back(r.optimal ? 1.0 : 0.0);
  }
  if (!star.empty()) {
    row.mean_f_star = median ? median_of(star) : mean_of(star);
    row.frac_optimal = mean_of(opt);
  }

  std::array<double, kNodeSourceCount> nodes{};
  int with_nodes = 0;
  for (const InstanceResult& r : results) {
    if (!r.nodes) continue;
    ++with_nodes;
    for (int s = 0; s < kNodeSourceCount; ++s) nodes[s] += static_cast<double>((*r.nodes)[s]);
  }
  if (with_nodes > 0) {
    for (double& v : nodes) v /= with_nodes;
    row.mean_nodes = nodes;
  }
  return row;
}

TableResult run_table(const TableConfig& cfg) {
  if (cfg.sizes.empty()) throw std::invalid_argument("run_table: sizes must be nonempty");
  if (cfg.count < 1) throw std::invalid_argument("run_table: count must be positive");

  struct Task {
    int n;
    int index;
  };
  std::vector<Task> tasks;
  for (int n : cfg.sizes) {
    if (n < 1) throw std::invalid_argument("run_table: sizes must be positive");
    for (int i = 0; i < cfg.count; ++i) tasks.push_back({n, i});
  }

  std::vector<std::optional<InstanceResult>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      InstanceSpec spec;
      spec.n = tasks[t].n;
      spec.seed = cfg.seed + static_cast<std::uint64_t>(tasks[t].index);
      try {
        results[t] = run_instance(spec, cfg.pipeline, tasks[t].index);
      } catch (const std::exception& e) {
        errors[t] = e.what();
        if (errors[t].empty()) errors[t] = "unknown error";
      }
    }
  };
  const int threads = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  TableResult out;
  std::size_t t = 0;
  for (int n : cfg.sizes) {
    std::vector<InstanceResult> group;
    for (int i = 0; i < cfg.count; ++i, ++t) {
      if (results[t]) {
        group.push_back(*results[t]);
      } else {
        out.failures.push_back({n, i, cfg.seed + static_cast<std::uint64_t>(i), errors[t]});
      }
    }
    out.rows.push_back(aggregate(n, group, false));
    out.medians.push_back(aggregate(n, group, true));
    out.instances.insert(out.instances.end(), group.begin(), group.end());
  }
  return out;
}

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  write_rows(os, rows, "mean_");
}

void write_median_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  write_rows(os, rows, "median_");
}

void write_instances_csv(std::ostream& os, const std::vector<InstanceResult>& instances) {
  os << "n,count,mean_f_cts,mean_f_scalar,mean_f_tr,mean_f_sdp,mean_f_rnd,mean_f_rnd_1opt,"
        "mean_f_best,mean_f_best_1opt,mean_f_star,frac_optimal,mean_oneopt_iters,seed";
  for (int s = 0; s < kNodeSourceCount; ++s) {
    os << ",nodes_" << to_string(static_cast<NodeSource>(s));
  }
  os << '\n';
  for (const InstanceResult& r : instances) {
    os << r.n << ",1," << fmt(r.f_cts) << ',' << fmt(r.f_scalar) << ',' << fmt(r.f_tr) << ','
       << fmt(r.f_sdp) << ',' << fmt(r.f_rnd) << ',' << fmt(r.f_rnd_1opt) << ',' << fmt(r.f_best)
       << ',' << fmt(r.f_best_1opt) << ',' << fmt(r.f_star) << ',';
    if (r.f_star) os << (r.optimal ? 1 : 0);
    os << ',' << fmt(r.oneopt_iters) << ',' << r.seed;
    for (int s = 0; s < kNodeSourceCount; ++s) {
      os << ',';
      if (r.nodes) os << (*r.nodes)[s];
    }
    os << '\n';
  }
}

Histogram histogram(const std::vector<double>& values, int bin_count) {
  if (values.empty()) throw std::invalid_argument("histogram: values must be nonempty");
  if (bin_count < 1) throw std::invalid_argument("histogram: bin_count must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  Histogram h;
  if (lo == hi) {
    h.edges = {lo, hi};
    h.counts = {static_cast<std::int64_t>(values.size())};
    return h;
  }
  const double width = (hi - lo) / bin_count;
  h.edges.resize(bin_count + 1);
  for (int b = 0; b <= bin_count; ++b) h.edges[b] = lo + width * b;
  h.edges[bin_count] = hi;
  h.counts.assign(bin_count, 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / width);
    b = std::clamp(b, 0, bin_count - 1);
    ++h.counts[b];
  }
  return h;
}

}  // namespace intquad
