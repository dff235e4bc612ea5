#include "smc/ssa.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace smc {

DirectMethod::DirectMethod(const Model& model)
    : model_(&model), propensities_(model.reactions().size(), 0.0) {}

EventOutcome DirectMethod::next_event(const State& state, RngStream& rng) {
  const auto& reactions = model_->reactions();
  double total = 0.0;
  for (std::size_t j = 0; j < reactions.size(); ++j) {
    propensities_[j] = compute_propensity(reactions[j], state, model_->parameters());
    total += propensities_[j];
  }
  if (!(total > 0.0)) return Absorbed{};

  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double delay = -std::log(u1) / total;

  const double target = u2 * total;
  double cumulative = 0.0;
  std::size_t chosen = reactions.size();
  for (std::size_t j = 0; j < reactions.size(); ++j) {
    if (propensities_[j] <= 0.0) continue;
    chosen = j;
    cumulative += propensities_[j];
    if (target < cumulative) break;
  }
  // Rounding can leave target just above the final partial sum; `chosen` is
  // then the last reaction with positive propensity.
  return NextEvent{chosen, delay};
}

EventOutcome next_event(const Model& model, const State& state, RngStream& rng) {
  DirectMethod method(model);
  return method.next_event(state, rng);
}

Trace simulate_to_time(const Model& model, const State& initial, double t_max, RngStream& rng) {
  if (!(t_max > 0.0)) throw std::invalid_argument("simulate_to_time: t_max must be positive");
  DirectMethod method(model);
  Trace trace(initial, 0.0);
  State state = initial;
  double t = 0.0;
  for (;;) {
    auto outcome = method.next_event(state, rng);
    const auto* event = std::get_if<NextEvent>(&outcome);
    if (!event) break;
    double next_t = t + event->delay;
    if (next_t <= t) next_t = std::nextafter(t, std::numeric_limits<double>::infinity());
    if (next_t > t_max) break;
    apply_stoichiometry_in_place(state, model.reactions()[event->reaction]);
    trace.append(state, next_t);
    t = next_t;
  }
  trace.close(t_max);
  return trace;
}

}  // namespace smc
