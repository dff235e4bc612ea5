#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "smc/formula.hpp"
#include "smc/network.hpp"
#include "smc/report.hpp"
#include "smc/stats.hpp"
#include "smc/trace.hpp"

namespace smc {

struct JobConfig {
  std::shared_ptr<const Model> model;
  Formula formula = Formula::truth();  ///< must be desugared
  std::string formula_text;            ///< echoed in the report
  double t_max = 1.0;
  ConfidenceSpec confidence;
  std::uint64_t master_seed = 0;
  unsigned worker_count = 1;
  Mode mode = Mode::Iterative;
  std::int64_t fixed_n = 0;  ///< Mode::Fixed only
  /// Keep the traces of the first `keep_traces` replicas of every batch.
  std::size_t keep_traces = 0;
  /// A batch fails when more than this fraction of replicas raise errors.
  double max_error_fraction = 0.01;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct KeptTrace {
  std::uint64_t replica;
  Trace trace;
};

struct BatchResult {
  std::int64_t successes = 0;
  std::int64_t trials = 0;  ///< replicas that finished without error
  std::int64_t sum_path_length = 0;
  std::int64_t error_count = 0;
  std::string first_error;  ///< message of the lowest-index failing replica
  std::vector<KeptTrace> traces;

  friend bool operator==(const BatchResult& a, const BatchResult& b) {
    return a.successes == b.successes && a.trials == b.trials && a.sum_path_length == b.sum_path_length &&
           a.error_count == b.error_count;
  }
};

/// Runs replicas replica_offset .. replica_offset + count - 1 on
/// cfg.worker_count threads. Replica r uses replica_seed(master_seed, r); the
/// result is reduced by replica index, so it does not depend on the worker
/// count or on scheduling. Throws BatchError when too many replicas fail.
BatchResult run_batch(const JobConfig& cfg, std::uint64_t replica_offset, std::int64_t count);

/// Called after every batch with the replica offset it started at.
using BatchObserver = std::function<void(std::uint64_t replica_offset, const BatchResult&)>;

/// Full estimation job: iterative Wilson loop, a single conservative batch,
/// or a single batch of fixed size. Replica offsets advance cumulatively, so
/// no seed is used twice.
EstimationReport estimate_probability(const JobConfig& cfg, const BatchObserver& observer = {});

/// Version string recorded in reports.
std::string_view tool_version();

}  // namespace smc
