#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smc/error.hpp"
#include "smc/expression.hpp"

namespace smc {

struct Species {
  std::string name;
  std::int64_t initial_count = 0;
};

/// Propensity c * (number of distinct reactant combinations).
struct MassAction {
  double constant = 0.0;
};

/// Propensity given directly by an expression over species and parameters.
struct ExplicitRate {
  std::string expression;
};

using RateLaw = std::variant<MassAction, ExplicitRate>;

/// Reaction as written in a model file: species referenced by name.
struct ReactionDefinition {
  std::string name;
  std::map<std::string, std::int64_t> reactants;
  std::map<std::string, std::int64_t> products;
  RateLaw rate;
};

/// Declarative reaction network; nothing is resolved until compile().
struct ReactionNetwork {
  std::vector<Species> species;
  std::map<std::string, double> parameters;
  std::vector<ReactionDefinition> reactions;
};

struct Violation {
  std::string subject;  ///< offending species, parameter or reaction name
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every problem found in the network, not only the first.
std::vector<Violation> validate_network(const ReactionNetwork& network);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Population snapshot, one count per species.
struct State {
  std::vector<std::int64_t> counts;

  std::size_t size() const { return counts.size(); }
  std::int64_t operator[](std::size_t i) const { return counts[i]; }
  friend bool operator==(const State&, const State&) = default;
};

struct StoichiometryTerm {
  std::size_t species;
  std::int64_t coefficient;
};

/// A reaction channel resolved against a network's species and parameters.
struct Reaction {
  std::string name;
  std::vector<StoichiometryTerm> reactants;
  std::vector<StoichiometryTerm> products;
  /// Net change per touched species (products minus reactants, zeros dropped).
  std::vector<StoichiometryTerm> net_change;
  std::variant<MassAction, Expression> rate;
};

/// Firing rate of `reaction` in `state`. Zero whenever a reactant count is
/// below its stoichiometric coefficient, in both rate modes.
/// Throws ModelError when an explicit rate evaluates negative or non-finite.
double compute_propensity(const Reaction& reaction, const State& state,
                          std::span<const double> parameters);

/// counts + products - reactants. Requires a positive propensity.
State apply_stoichiometry(State state, const Reaction& reaction);
void apply_stoichiometry_in_place(State& state, const Reaction& reaction);

/// A validated, immutable network ready for simulation. Safe to share
/// between threads.
class Model {
 public:
  /// Throws ValidationError listing every violation.
  static Model compile(const ReactionNetwork& network);

  std::size_t species_count() const { return species_names_.size(); }
  const std::vector<std::string>& species_names() const { return species_names_; }
  const std::vector<std::string>& parameter_names() const { return parameter_names_; }
  std::span<const double> parameters() const { return parameter_values_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const State& initial_state() const { return initial_state_; }
  const SymbolTable& symbols() const { return symbols_; }

  std::size_t species_index(std::string_view name) const;

 private:
  std::vector<std::string> species_names_;
  std::vector<std::string> parameter_names_;
  std::vector<double> parameter_values_;
  std::vector<Reaction> reactions_;
  State initial_state_;
  SymbolTable symbols_;
};

}  // namespace smc
