#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smc/stats.hpp"

namespace smc {

enum class Mode { Iterative, Conservative, Fixed };

std::string_view to_string(Mode mode);
/// Accepts "iterative", "conservative" and "fixed".
std::optional<Mode> mode_from_string(std::string_view text);

/// Result of one estimation job. Serialized by to_json(); the layout is
/// described by schemas/report.schema.json.
struct EstimationReport {
  std::string tool_version;
  std::string model;    ///< model file path, empty when built in memory
  std::string formula;  ///< formula as given
  double t_max = 0.0;
  Mode mode = Mode::Iterative;
  std::optional<std::int64_t> fixed_n;
  double alpha = 0.0;
  double epsilon = 0.0;
  std::uint64_t master_seed = 0;
  unsigned worker_count = 1;
  std::string rng;

  double p_hat = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  std::int64_t successes = 0;
  std::int64_t n_total = 0;
  std::int64_t errors = 0;
  std::vector<BatchRecord> iterations;
  double mean_path_length = 0.0;
  double wall_time_seconds = 0.0;

  friend bool operator==(const EstimationReport&, const EstimationReport&) = default;
};

/// Pretty-printed JSON document.
std::string to_json(const EstimationReport& report);
/// Inverse of to_json(); throws smc::Error on malformed input.
EstimationReport report_from_json(std::string_view text);

/// Short human-readable summary.
std::string to_text(const EstimationReport& report);

}  // namespace smc
