#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smc/network.hpp"

namespace smc {

/// Finite timed path: states s_0, s_1, ... with the model time at which each
/// was entered. The sojourn in s_i is entry(i+1) - entry(i); the sojourn of
/// the last state is bounded by end_time() when the trace is closed and is
/// unobserved otherwise.
class Trace {
 public:
  Trace() = default;
  explicit Trace(State initial, double start_time = 0.0);

  void append(State state, double entry_time);
  /// Fixes the end of observation; the last state is occupied until `time`.
  void close(double time);

  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  /// Number of transitions (size() - 1).
  std::size_t event_count() const { return states_.empty() ? 0 : states_.size() - 1; }

  const State& state(std::size_t i) const { return states_[i]; }
  double entry_time(std::size_t i) const { return entry_times_[i]; }
  const std::vector<State>& states() const { return states_; }
  const std::vector<double>& entry_times() const { return entry_times_; }

  bool closed() const { return end_time_.has_value(); }
  std::optional<double> end_time() const { return end_time_; }

  /// Time spent in state i. Throws std::out_of_range for the last state of an
  /// open trace.
  double sojourn(std::size_t i) const;

  /// State occupied at absolute time t (t within [start, end]).
  const State& state_at(double t) const;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<State> states_;
  std::vector<double> entry_times_;
  std::optional<double> end_time_;
};

/// "time,<species...>" header, then one row per state at its entry time.
void write_trace_csv(std::ostream& out, const Trace& trace,
                     const std::vector<std::string>& species_names);

}  // namespace smc
