#include "smc/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "smc/checker.hpp"
#include "smc/rng.hpp"

namespace smc {

std::string_view tool_version() { return "1.0.0"; }

void JobConfig::validate() const {
  if (!model) throw std::invalid_argument("job has no model");
  if (!formula.is_desugared()) throw std::invalid_argument("job formula must be desugared");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive and finite");
  confidence.validate();
  if (worker_count < 1) throw std::invalid_argument("worker_count must be at least 1");
  if (mode == Mode::Fixed && fixed_n < 1) throw std::invalid_argument("fixed sample size must be at least 1");
  if (!(max_error_fraction >= 0.0 && max_error_fraction <= 1.0)) {
    throw std::invalid_argument("max_error_fraction must lie in [0, 1]");
  }
}

namespace {

struct ReplicaOutcome {
  bool success = false;
  bool failed = false;
  std::int64_t path_length = 0;
  std::string error;
};

/// Runs fn(i) for i in [0, count) on `workers` threads pulling from a shared
/// counter. The first non-library exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::int64_t count, unsigned workers, Fn&& fn) {
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::int64_t>(workers, std::max<std::int64_t>(count, 1)));
  if (threads <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

BatchResult run_batch(const JobConfig& cfg, std::uint64_t replica_offset, std::int64_t count) {
  if (count < 1) throw std::invalid_argument("run_batch: count must be at least 1");
  cfg.validate();
  const Model& model = *cfg.model;
  const std::size_t keep = std::min<std::size_t>(cfg.keep_traces, static_cast<std::size_t>(count));

  std::vector<ReplicaOutcome> outcomes(static_cast<std::size_t>(count));
  std::vector<Trace> kept(keep);

  parallel_for(count, cfg.worker_count, [&](std::int64_t i) {
    const std::uint64_t replica = replica_offset + static_cast<std::uint64_t>(i);
    RngStream rng(replica_seed(cfg.master_seed, replica));
    ReplicaOutcome& out = outcomes[static_cast<std::size_t>(i)];
    try {
      CheckResult result = simulate_verify(cfg.formula, model, model.initial_state(), cfg.t_max, rng);
      out.success = finalize_verdict(result.verdict);
      out.path_length = static_cast<std::int64_t>(result.trace.size());
      if (static_cast<std::size_t>(i) < keep) kept[static_cast<std::size_t>(i)] = std::move(result.trace);
    } catch (const Error& e) {
      out.failed = true;
      out.error = e.what();
    }
  });

  BatchResult result;
  for (const auto& o : outcomes) {
    if (o.failed) {
      if (result.error_count == 0) result.first_error = o.error;
      ++result.error_count;
      continue;
    }
    ++result.trials;
    result.successes += o.success ? 1 : 0;
    result.sum_path_length += o.path_length;
  }
  for (std::size_t i = 0; i < keep; ++i) {
    if (!outcomes[i].failed) result.traces.push_back({replica_offset + i, std::move(kept[i])});
  }
  if (static_cast<double>(result.error_count) > cfg.max_error_fraction * static_cast<double>(count)) {
    throw BatchError(std::to_string(result.error_count) + " of " + std::to_string(count) +
                     " replicas failed; first error: " + result.first_error);
  }
  return result;
}

EstimationReport estimate_probability(const JobConfig& cfg, const BatchObserver& observer) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  std::uint64_t offset = 0;
  std::int64_t path_sum = 0;
  std::int64_t errors = 0;
  BatchRunner runner = [&](std::int64_t count) {
    BatchResult batch = run_batch(cfg, offset, count);
    if (observer) observer(offset, batch);
    offset += static_cast<std::uint64_t>(count);
    path_sum += batch.sum_path_length;
    errors += batch.error_count;
    return BatchOutcome{batch.successes, batch.trials};
  };

  Estimate est;
  switch (cfg.mode) {
    case Mode::Iterative:
      est = iterative_estimate(runner, cfg.confidence);
      break;
    case Mode::Conservative:
      est = fixed_estimate(runner, conservative_sample_size(cfg.confidence), cfg.confidence);
      break;
    case Mode::Fixed:
      est = fixed_estimate(runner, cfg.fixed_n, cfg.confidence);
      break;
  }

  EstimationReport report;
  report.tool_version = std::string(tool_version());
  report.formula = cfg.formula_text.empty() ? cfg.formula.to_string() : cfg.formula_text;
  report.t_max = cfg.t_max;
  report.mode = cfg.mode;
  if (cfg.mode == Mode::Fixed) report.fixed_n = cfg.fixed_n;
  report.alpha = cfg.confidence.alpha;
  report.epsilon = cfg.confidence.epsilon;
  report.master_seed = cfg.master_seed;
  report.worker_count = cfg.worker_count;
  report.rng = std::string(RngStream::algorithm());
  report.p_hat = est.p_hat;
  report.lower = est.lower;
  report.upper = est.upper;
  report.successes = est.successes;
  report.n_total = est.n_total;
  report.errors = errors;
  report.iterations = est.iterations;
  report.mean_path_length = static_cast<double>(path_sum) / static_cast<double>(est.n_total);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace smc
