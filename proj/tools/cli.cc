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

#include "cli.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intquad/bench.h"
#include "intquad/bounds.h"
#include "intquad/errors.h"
#include "intquad/exact.h"
#include "intquad/heuristics.h"
#include "intquad/io.h"
#include "intquad/model.h"
#include "intquad/sdp.h"

namespace intquad::cli {

namespace {

// Writes to `path`, or to `fallback` when path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
      return;
    }
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot write " + path);
    os_ = &file_;
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_ = nullptr;
};

struct GenOptions {
  int n = 0;
  int m = -1;
  int count = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string mode = "gaussian_ils";
  std::vector<double> spectrum;
  bool no_scale = false;
  std::string out_dir;
};

struct BoundOptions {
  std::string file;
  std::string method = "all";
  int max_iters = SdpConfig{}.max_iters;
  std::string out;
};

struct SolveOptions {
  std::string file;
  int samples = -1;
  bool no_one_opt = false;
  std::uint64_t seed = kDefaultSeed;
  std::string trace;
  std::string out;
};

struct ExactOptions {
  std::string file;
  std::string ub = "zero";
  std::int64_t node_budget = -1;
  int samples = -1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

struct BenchOptions {
  std::vector<int> sizes;
  int count = 100;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
  int exact_cutoff = 50;
  bool node_counts = false;
  std::string out;
  std::string instances;
  std::string medians;
};

int run_gen(const GenOptions& o, std::ostream& out) {
  InstanceSpec spec;
  spec.n = o.n;
  spec.m = o.m;
  spec.scale_to_unit = !o.no_scale;
  if (o.mode == "fixed_spectrum") {
    spec.mode = InstanceMode::kFixedSpectrum;
    spec.spectrum = o.spectrum;
  } else if (o.mode != "gaussian_ils") {
    throw std::invalid_argument("--mode must be gaussian_ils or fixed_spectrum");
  }
  if (o.count > 1 && o.out_dir.empty()) {
    throw std::invalid_argument("--count > 1 requires --out-dir");
  }
  for (int i = 0; i < o.count; ++i) {
    spec.seed = o.seed + static_cast<std::uint64_t>(i);
    const Problem p = generate(spec);
    std::ostringstream meta;
    meta << "{\"generator\":\"" << o.mode << "\",\"seed\":" << spec.seed
         << ",\"scaled\":" << (spec.scale_to_unit ? "true" : "false") << "}";
    if (o.out_dir.empty()) {
      out << instance_to_json(p, meta.str());
    } else {
      std::filesystem::create_directories(o.out_dir);
      const std::string path = (std::filesystem::path(o.out_dir) /
                                ("instance_n" + std::to_string(o.n) + "_s" +
                                 std::to_string(spec.seed) + ".json"))
                                   .string();
      write_instance_file(path, p, meta.str());
      out << path << '\n';
    }
  }
  return kOk;
}

int run_bound(const BoundOptions& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.file);
  const Problem& p = inst.problem;
  const bool all = o.method == "all";
  const bool want_sdp = all || o.method == "sdp";
  const NormalizedProblem np = normalize(p);
  BoundReport report = bound_report(p, np);
  if (want_sdp) {
    SdpConfig cfg;
    cfg.max_iters = o.max_iters;
    attach_sdp(report, solve_relaxation(np, cfg));
  }
  Sink sink(o.out, out);
  *sink << bound_report_to_json(report, all || o.method == "cts", all || o.method == "scalar",
                                all || o.method == "tr", want_sdp);
  return kOk;
}

SearchResult search_instance(const Problem& p, int samples, bool one_opt, std::uint64_t seed) {
  const NormalizedProblem np = normalize(p);
  const SdpResult sdp = solve_relaxation(np);
  const GaussianSampler sampler = extract_sampler(sdp.primal);
  SearchConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.one_opt = one_opt;
  return randomized_search(p, np, sampler, cfg);
}

int run_solve(const SolveOptions& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.file);
  const SearchResult result = search_instance(inst.problem, o.samples, !o.no_one_opt, o.seed);
  if (!o.trace.empty()) {
    Sink trace(o.trace, out);
    write_trace_csv(*trace, result.trace);
  }
  Sink sink(o.out, out);
  *sink << incumbent_to_json(result.best, &result);
  return kOk;
}

int run_exact(const ExactOptions& o, std::ostream& out) {
  const Instance inst = read_instance_file(o.file);
  const Problem& p = inst.problem;
  const int n = p.dimension();
  ExactConfig cfg;
  cfg.node_budget = o.node_budget;
  std::string source = o.ub;
  if (o.ub == "zero") {
    const IntVector zero = IntVector::Zero(n);
    cfg.initial_x = zero;
    cfg.initial_ub = evaluate(p, zero);
  } else if (o.ub == "rnd" || o.ub == "rnd1opt") {
    const RoundingResult r = round_and_descend(p);
    const Incumbent& inc = o.ub == "rnd" ? r.rounded : r.descended;
    cfg.initial_x = inc.x;
    cfg.initial_ub = inc.value;
  } else if (o.ub == "best1opt") {
    const SearchResult r = search_instance(p, o.samples, true, o.seed);
    cfg.initial_x = r.best.x;
    cfg.initial_ub = r.best.value;
  } else if (o.ub.rfind("value:", 0) == 0) {
    const std::string text = o.ub.substr(6);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
      throw std::invalid_argument("--ub value:<v> needs a finite number");
    }
    cfg.initial_ub = v;
    source = "value";
  } else {
    throw std::invalid_argument("--ub must be zero, rnd, rnd1opt, best1opt or value:<v>");
  }
  const ExactResult r = solve_exact(p, cfg);
  Sink sink(o.out, out);
  *sink << exact_to_json(r, source, cfg.initial_ub);
  return kOk;
}

int run_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  TableConfig cfg;
  cfg.sizes = o.sizes;
  cfg.count = o.count;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.pipeline.exact_cutoff = o.exact_cutoff;
  cfg.pipeline.node_counts = o.node_counts;
  const TableResult result = run_table(cfg);
  for (const InstanceFailure& f : result.failures) {
    err << "warning: instance n=" << f.n << " index=" << f.index << " seed=" << f.seed
        << " excluded: " << f.message << '\n';
  }
  {
    Sink sink(o.out, out);
    write_table_csv(*sink, result.rows);
  }
  if (!o.instances.empty()) {
    Sink sink(o.instances, out);
    write_instances_csv(*sink, result.instances);
  }
  if (!o.medians.empty()) {
    Sink sink(o.medians, out);
    write_median_csv(*sink, result.medians);
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex quadratic minimization over the integer lattice", "intquad"};
  app.require_subcommand(1, 1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate random instances as JSON");
  gen_cmd->add_option("--n", gen.n, "Dimension")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen.m, "Rows of A (default 2n)");
  gen_cmd->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first instance");
  gen_cmd->add_option("--mode", gen.mode, "gaussian_ils or fixed_spectrum");
  gen_cmd->add_option("--spectrum", gen.spectrum, "Eigenvalues for fixed_spectrum")
      ->delimiter(',');
  gen_cmd->add_flag("--no-scale", gen.no_scale, "Keep the unscaled draw");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Directory for instance files");

  BoundOptions bound;
  CLI::App* bound_cmd = app.add_subcommand("bound", "Lower bounds as JSON");
  bound_cmd->add_option("file", bound.file, "Instance JSON")->required();
  bound_cmd->add_option("--method", bound.method, "cts, scalar, tr, sdp or all")
      ->check(CLI::IsMember({"cts", "scalar", "tr", "sdp", "all"}));
  bound_cmd->add_option("--max-iters", bound.max_iters, "SDP iteration limit")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--out", bound.out, "Output path");

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Randomized rounding with 1-opt");
  solve_cmd->add_option("file", solve.file, "Instance JSON")->required();
  solve_cmd->add_option("--samples", solve.samples, "Sample count (default 3n)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_flag("--no-one-opt", solve.no_one_opt, "Disable 1-opt descent");
  solve_cmd->add_option("--seed", solve.seed, "Sampling seed");
  solve_cmd->add_option("--trace", solve.trace, "Write the per-sample trace CSV here");
  solve_cmd->add_option("--out", solve.out, "Output path");

  ExactOptions exact;
  CLI::App* exact_cmd = app.add_subcommand("exact", "Exact enumeration");
  exact_cmd->add_option("file", exact.file, "Instance JSON")->required();
  exact_cmd->add_option("--ub", exact.ub, "zero, rnd, rnd1opt, best1opt or value:<v>");
  exact_cmd->add_option("--node-budget", exact.node_budget, "Node limit (default unlimited)");
  exact_cmd->add_option("--samples", exact.samples, "Samples for best1opt (default 3n)")
      ->check(CLI::NonNegativeNumber);
  exact_cmd->add_option("--seed", exact.seed, "Sampling seed for best1opt");
  exact_cmd->add_option("--out", exact.out, "Output path");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Experiment tables as CSV");
  bench_cmd->add_option("--sizes", bench.sizes, "Dimensions")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--count", bench.count, "Instances per size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed, "Base seed; instance i uses seed + i");
  bench_cmd->add_option("--threads", bench.threads, "Pool size (default INTQUAD_THREADS)")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--exact-cutoff", bench.exact_cutoff, "Largest n solved exactly");
  bench_cmd->add_flag("--node-counts", bench.node_counts,
                      "Enumerate once per initial bound source");
  bench_cmd->add_option("--out", bench.out, "Table CSV path");
  bench_cmd->add_option("--instances", bench.instances, "Per-instance CSV path");
  bench_cmd->add_option("--medians", bench.medians, "Median table CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*bound_cmd) return run_bound(bound, out);
    if (*solve_cmd) return run_solve(solve, out);
    if (*exact_cmd) return run_exact(exact, out);
    if (*bench_cmd) return run_bench(bench, out, err);
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInvalidInput;
}

}  // namespace intquad::cli
