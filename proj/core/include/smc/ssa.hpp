#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "smc/network.hpp"
#include "smc/rng.hpp"
#include "smc/trace.hpp"

namespace smc {

struct NextEvent {
  std::size_t reaction;
  double delay;
};

/// No reaction can fire: the current state is occupied forever.
struct Absorbed {
  friend bool operator==(Absorbed, Absorbed) = default;
};

using EventOutcome = std::variant<NextEvent, Absorbed>;

/// Gillespie direct method. Holds a propensity scratch buffer, so one
/// instance per thread.
class DirectMethod {
 public:
  explicit DirectMethod(const Model& model);

  /// Draws the delay from Exp(a0) with the first uniform and picks the
  /// reaction by inverting the cumulative propensities with the second.
  EventOutcome next_event(const State& state, RngStream& rng);

  /// Propensities computed by the last next_event() call.
  const std::vector<double>& propensities() const { return propensities_; }

  const Model& model() const { return *model_; }

 private:
  const Model* model_;
  std::vector<double> propensities_;
};

EventOutcome next_event(const Model& model, const State& state, RngStream& rng);

/// Full trajectory from `initial` at time 0 until the next event would land
/// after t_max, or the chain is absorbed. The returned trace is closed at
/// t_max. Throws std::invalid_argument unless t_max > 0.
Trace simulate_to_time(const Model& model, const State& initial, double t_max, RngStream& rng);

}  // namespace smc
