// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "twl/analysis.hpp"
#include "twl/generators.hpp"
#include "twl/oracle.hpp"

namespace {

using twl::Instance;

// First seed whose instance has exactly `pairs` conflict pairs.
std::shared_ptr<const Instance> instance_with_pairs(std::size_t pairs) {
  for (std::uint64_t seed = 1;; ++seed) {
    twl::RandomSpec spec;
    spec.seed = seed;
    spec.n = 10;
    spec.extent = 3.0;
    spec.weight_max = 4.0;
    auto inst = std::make_shared<const Instance>(twl::gen_random(spec));
    if (twl::conflict_pairs(*inst).size() == pairs) return inst;
  }
}

std::vector<std::shared_ptr<const Instance>> batch(std::size_t count) {
  std::vector<std::shared_ptr<const Instance>> out;
  for (std::uint64_t seed = 1; out.size() < count; ++seed) {
    twl::RandomSpec spec;
    spec.seed = seed;
    spec.n = 7;
    auto inst = std::make_shared<const Instance>(twl::gen_random(spec));
    if (twl::conflict_pairs(*inst).size() <= 12) out.push_back(std::move(inst));
  }
  return out;
}

void BM_ExhaustiveSerial(benchmark::State& state) {
  const auto inst = instance_with_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twl::solve_exhaustive_serial(inst).volume);
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}
BENCHMARK(BM_ExhaustiveSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveParallel(benchmark::State& state) {
  const auto inst = instance_with_pairs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(twl::solve_exhaustive_parallel(inst).volume);
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << state.range(0)));
}
BENCHMARK(BM_ExhaustiveParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RatioBatchSerial(benchmark::State& state) {
  const auto instances = batch(64);
  twl::OracleConfig config;
  config.mode = twl::OracleMode::kExhaustive;
  config.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(twl::ratio_reports_serial(instances, config).size());
}
BENCHMARK(BM_RatioBatchSerial)->Unit(benchmark::kMillisecond);

void BM_RatioBatchParallel(benchmark::State& state) {
  const auto instances = batch(64);
  twl::OracleConfig config;
  config.mode = twl::OracleMode::kExhaustive;
  for (auto _ : state) benchmark::DoNotOptimize(twl::ratio_reports(instances, config).size());
}
BENCHMARK(BM_RatioBatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

Instance large_instance() {
  twl::RandomSpec spec;
  spec.seed = 7;
  spec.n = 3000;
  spec.extent = 200.0;
  return twl::gen_random(spec);
}

void BM_ConflictGraphSerial(benchmark::State& state) {
  const Instance inst = large_instance();
  for (auto _ : state) benchmark::DoNotOptimize(twl::build_conflict_graph_serial(inst).edge_count());
}
BENCHMARK(BM_ConflictGraphSerial)->Unit(benchmark::kMillisecond);

void BM_ConflictGraphParallel(benchmark::State& state) {
  const Instance inst = large_instance();
  for (auto _ : state) benchmark::DoNotOptimize(twl::build_conflict_graph(inst).edge_count());
}
BENCHMARK(BM_ConflictGraphParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
