#pragma once

#include <cstddef>
#include <string_view>

#include "smc/formula.hpp"
#include "smc/network.hpp"
#include "smc/rng.hpp"
#include "smc/ssa.hpp"
#include "smc/trace.hpp"

namespace smc {

/// Outcome of checking a formula on a trajectory observed up to t_max.
/// Unknown means the answer depends on the path after t_max.
enum class Verdict { False, True, Unknown };

std::string_view to_string(Verdict v);

// Kleene three-valued connectives.
Verdict verdict_not(Verdict v);
Verdict verdict_and(Verdict a, Verdict b);
Verdict verdict_or(Verdict a, Verdict b);

/// Append-only trajectory generated on demand. A point, once generated, is
/// never regenerated, so every subformula sees the same path.
class TraceBuffer {
 public:
  enum class Tail {
    Open,      ///< more points can be generated
    Absorbed,  ///< the last state is occupied forever
    Horizon,   ///< the last generated point was entered after t_max
  };

  TraceBuffer(const Model& model, const State& initial, double t_max, RngStream& rng);

  /// Generates points until index `i` exists or the tail is no longer open.
  /// True when point i exists and was entered at or before t_max.
  bool ensure(std::size_t i);

  /// Points entered at or before t_max.
  std::size_t usable_size() const;
  Tail tail() const { return tail_; }
  double t_max() const { return t_max_; }

  /// Everything generated so far, including a trailing past-horizon point.
  const Trace& trace() const { return trace_; }
  Trace take_trace() && { return std::move(trace_); }

 private:
  void extend();

  DirectMethod method_;
  RngStream* rng_;
  Trace trace_;
  State current_;
  double t_max_;
  Tail tail_ = Tail::Open;
};

struct CheckResult {
  Verdict verdict;
  Trace trace;
};

/// Simulates from `initial` only as far as needed to decide `formula`
/// (which must be desugared) or until the path leaves [0, t_max].
/// Evaluation and model errors propagate as exceptions.
CheckResult simulate_verify(const Formula& formula, const Model& model, const State& initial,
                            double t_max, RngStream& rng);

/// Pessimistic mapping for the top-level verdict: Unknown counts as false.
bool finalize_verdict(Verdict v);

}  // namespace smc
