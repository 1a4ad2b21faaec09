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

#include <cstdint>

#include "benchmark/benchmark.h"
#include "intquad/bench.h"
#include "intquad/bounds.h"
#include "intquad/exact.h"
#include "intquad/heuristics.h"
#include "intquad/model.h"
#include "intquad/numkernel.h"
#include "intquad/sdp.h"

namespace intquad {
namespace {

Problem instance(int n, std::uint64_t seed = 1) {
  InstanceSpec spec;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

void BM_SymEig(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sym_eig(p.P()));
}
BENCHMARK(BM_SymEig)->Arg(10)->Arg(50)->Arg(100);

void BM_Generate(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(instance(static_cast<int>(state.range(0)), ++seed));
}
BENCHMARK(BM_Generate)->Arg(10)->Arg(50);

void BM_ScalarDualBound(benchmark::State& state) {
  const NormalizedProblem np = normalize(instance(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(scalar_dual_bound(np));
}
BENCHMARK(BM_ScalarDualBound)->Arg(10)->Arg(50)->Arg(100);

void BM_SolveRelaxation(benchmark::State& state) {
  const NormalizedProblem np = normalize(instance(static_cast<int>(state.range(0))));
  int iterations = 0;
  for (auto _ : state) {
    const SdpResult r = solve_relaxation(np);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.dual.certified_bound);
  }
  state.counters["admm_iters"] = iterations;
}
BENCHMARK(BM_SolveRelaxation)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_OneOpt(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  const IntVector start = IntVector::Zero(p.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(one_opt(p, start));
}
BENCHMARK(BM_OneOpt)->Arg(10)->Arg(50)->Arg(100);

void BM_RandomizedSearch(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  const NormalizedProblem np = normalize(p);
  const GaussianSampler sampler = extract_sampler(solve_relaxation(np).primal);
  SearchConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(randomized_search(p, np, sampler, cfg));
}
BENCHMARK(BM_RandomizedSearch)->Arg(10)->Arg(50);

void BM_SolveExact(benchmark::State& state) {
  const Problem p = instance(static_cast<int>(state.range(0)));
  const double ub = state.range(1) == 0 ? 0.0 : round_and_descend(p).descended.value;
  std::int64_t nodes = 0;
  for (auto _ : state) {
    const ExactResult r = solve_exact(p, ub);
    nodes = r.stats.nodes_visited;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SolveExact)
    ->Args({10, 0})
    ->Args({30, 0})
    ->Args({30, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace intquad

BENCHMARK_MAIN();
