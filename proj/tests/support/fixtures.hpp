#pragma once

// Shared test models and hand-rolled random generators.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "smc/formula.hpp"
#include "smc/network.hpp"
#include "smc/trace.hpp"

namespace smc::test {

/// x -> 0 with mass-action constant k.
ReactionNetwork death_network(std::int64_t x0, double k = 1.0);
std::shared_ptr<const Model> death_model(std::int64_t x0, double k = 1.0);

/// 0 -> x at rate b, x -> 0 at rate d * x.
ReactionNetwork birth_death_network(std::int64_t x0 = 5, double b = 10.0, double d = 1.0);

/// One species "x" with constant-rate reactions, one per entry of `rates`,
/// each adding one x. Propensities are exactly the given numbers.
std::shared_ptr<const Model> constant_rate_model(const std::vector<double>& rates);

/// Path to a bundled model file.
std::string model_path(const std::string& file);

/// 1 - 2 e^-t + e^-2t: probability that pure death from 2 at unit rate has
/// reached 0 by time t.
double pure_death_extinction(double t);

/// Random generators. Every draw goes through the caller's engine so a
/// failing case can be replayed from its seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double real(double lo, double hi);
  bool chance(double p);

  /// 1-3 species, 1-4 reactions, mass action with small coefficients and a
  /// few explicit rates. Always valid.
  ReactionNetwork network();

  /// Formula over the species of `model`. Temporal bounds are drawn around
  /// `scale`; some are unbounded. `depth` limits nesting.
  Formula formula(const Model& model, double scale, int depth = 3);
  Formula atom(const Model& model);
  Interval interval(double scale);

  /// Closed trace of `points` states over species of `model`, counts in
  /// [0, 10], strictly increasing entry times.
  Trace trace(const Model& model, std::size_t points);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smc::test
