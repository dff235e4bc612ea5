#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "smc/checker.hpp"
#include "smc/model_io.hpp"
#include "smc/orchestrator.hpp"
#include "smc/rng.hpp"
#include "smc/ssa.hpp"
#include "smc/stats.hpp"

namespace {

std::shared_ptr<const smc::Model> load(const std::string& file) {
  return std::make_shared<const smc::Model>(
      smc::Model::compile(smc::read_network_file(std::string(SMC_MODELS_DIR) + "/" + file)));
}

void BM_NextEventCellCycle(benchmark::State& state) {
  const auto model = load("cell_cycle.json");
  smc::DirectMethod method(*model);
  smc::RngStream rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(method.next_event(model->initial_state(), rng));
}
BENCHMARK(BM_NextEventCellCycle);

void BM_SimulateToTime(benchmark::State& state) {
  const auto model = load("linear_death.json");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    smc::RngStream rng(seed++);
    benchmark::DoNotOptimize(smc::simulate_to_time(*model, model->initial_state(), 1.0, rng));
  }
}
BENCHMARK(BM_SimulateToTime);

void BM_SimulateVerifyCellCycle(benchmark::State& state) {
  const auto model = load("cell_cycle.json");
  const smc::Formula f = smc::desugar_formula(smc::parse_formula("(a <= 4) U (y >= 5)", model->symbols()));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    smc::RngStream rng(seed++);
    benchmark::DoNotOptimize(smc::simulate_verify(f, *model, model->initial_state(), 1.0, rng));
  }
}
BENCHMARK(BM_SimulateVerifyCellCycle);

void BM_RunBatch(benchmark::State& state) {
  smc::JobConfig cfg;
  cfg.model = load("birth_death.json");
  cfg.formula = smc::desugar_formula(smc::parse_formula("G[0,2](x <= 20)", cfg.model->symbols()));
  cfg.t_max = 2.0;
  cfg.worker_count = static_cast<unsigned>(state.range(0));
  std::uint64_t offset = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc::run_batch(cfg, offset, 2648));
    offset += 2648;
  }
  state.SetItemsProcessed(state.iterations() * 2648);
}
BENCHMARK(BM_RunBatch)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();

void BM_WilsonSampleSize(benchmark::State& state) {
  int k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smc::wilson_sample_size(k / 1000.0, 0.025, 0.01));
    k = k == 1000 ? 0 : k + 1;
  }
}
BENCHMARK(BM_WilsonSampleSize);

}  // namespace

BENCHMARK_MAIN();
