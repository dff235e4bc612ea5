#include "smc/network.hpp"

#include <cassert>
#include <cctype>
#include <cmath>
#include <set>

namespace smc {

namespace {

bool is_identifier(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

SymbolTable build_symbols(const ReactionNetwork& network) {
  SymbolTable symbols;
  std::size_t i = 0;
  for (const auto& s : network.species) symbols.add_species(s.name, i++);
  i = 0;
  for (const auto& [name, value] : network.parameters) symbols.add_parameter(name, i++);
  return symbols;
}

std::string join_messages(const std::vector<Violation>& violations) {
  std::string out = "invalid reaction network:";
  for (const auto& v : violations) out += "\n  " + v.subject + ": " + v.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_messages(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate_network(const ReactionNetwork& network) {
  std::vector<Violation> out;
  if (network.species.empty()) out.push_back({"<network>", "no species declared"});

  std::set<std::string> species_seen;
  std::set<std::string> reported;
  for (const auto& s : network.species) {
    if (!is_identifier(s.name)) out.push_back({s.name, "species name is not a valid identifier"});
    if (!species_seen.insert(s.name).second && reported.insert(s.name).second) {
      out.push_back({s.name, "duplicate species name"});
    }
    if (s.initial_count < 0) out.push_back({s.name, "negative initial count"});
  }
  for (const auto& [name, value] : network.parameters) {
    if (!is_identifier(name)) out.push_back({name, "parameter name is not a valid identifier"});
    if (species_seen.count(name)) out.push_back({name, "parameter name clashes with a species"});
    if (!std::isfinite(value)) out.push_back({name, "parameter value is not finite"});
  }

  const SymbolTable symbols = build_symbols(network);
  std::set<std::string> reaction_seen;
  for (const auto& r : network.reactions) {
    if (r.name.empty()) out.push_back({"<reaction>", "reaction without a name"});
    if (!reaction_seen.insert(r.name).second) out.push_back({r.name, "duplicate reaction name"});
    auto check_side = [&](const std::map<std::string, std::int64_t>& side, const char* what) {
      for (const auto& [species, coefficient] : side) {
        if (!species_seen.count(species)) {
          out.push_back({r.name, std::string(what) + " references undeclared species '" + species + "'"});
        }
        if (coefficient <= 0) {
          out.push_back({r.name, std::string(what) + " coefficient for '" + species + "' must be positive"});
        }
      }
    };
    check_side(r.reactants, "reactant");
    check_side(r.products, "product");

    if (const auto* ma = std::get_if<MassAction>(&r.rate)) {
      if (!(ma->constant > 0.0) || !std::isfinite(ma->constant)) {
        out.push_back({r.name, "mass-action constant must be positive and finite"});
      }
    } else {
      const auto& text = std::get<ExplicitRate>(r.rate).expression;
      try {
        (void)parse_expression(text, symbols);
      } catch (const UnknownIdentifierError& e) {
        out.push_back({r.name, "rate references unknown identifier '" + e.name() + "'"});
      } catch (const ParseError& e) {
        out.push_back({r.name, std::string("rate expression: ") + e.what()});
      }
    }
  }
  return out;
}

double compute_propensity(const Reaction& reaction, const State& state,
                          std::span<const double> parameters) {
  for (const auto& term : reaction.reactants) {
    if (state.counts[term.species] < term.coefficient) return 0.0;
  }
  if (const auto* ma = std::get_if<MassAction>(&reaction.rate)) {
    double combinations = 1.0;
    for (const auto& term : reaction.reactants) {
      // x (x-1) ... (x-k+1) / k!
      const auto x = state.counts[term.species];
      for (std::int64_t i = 0; i < term.coefficient; ++i) {
        combinations *= static_cast<double>(x - i) / static_cast<double>(i + 1);
      }
    }
    return ma->constant * combinations;
  }
  const double a = evaluate_expression(std::get<Expression>(reaction.rate), state.counts, parameters);
  if (!std::isfinite(a) || a < 0.0) {
    throw ModelError("reaction '" + reaction.name + "' has invalid propensity " + std::to_string(a));
  }
  return a;
}

void apply_stoichiometry_in_place(State& state, const Reaction& reaction) {
  for (const auto& term : reaction.net_change) {
    state.counts[term.species] += term.coefficient;
    assert(state.counts[term.species] >= 0 && "reaction fired without enough reactants");
  }
}

State apply_stoichiometry(State state, const Reaction& reaction) {
  apply_stoichiometry_in_place(state, reaction);
  return state;
}

Model Model::compile(const ReactionNetwork& network) {
  auto violations = validate_network(network);
  if (!violations.empty()) throw ValidationError(std::move(violations));

  Model m;
  m.symbols_ = build_symbols(network);
  for (const auto& s : network.species) {
    m.species_names_.push_back(s.name);
    m.initial_state_.counts.push_back(s.initial_count);
  }
  for (const auto& [name, value] : network.parameters) {
    m.parameter_names_.push_back(name);
    m.parameter_values_.push_back(value);
  }
  for (const auto& def : network.reactions) {
    Reaction r;
    r.name = def.name;
    std::map<std::size_t, std::int64_t> delta;
    for (const auto& [species, k] : def.reactants) {
      const std::size_t idx = m.species_index(species);
      r.reactants.push_back({idx, k});
      delta[idx] -= k;
    }
    for (const auto& [species, k] : def.products) {
      const std::size_t idx = m.species_index(species);
      r.products.push_back({idx, k});
      delta[idx] += k;
    }
    for (const auto& [idx, d] : delta) {
      if (d != 0) r.net_change.push_back({idx, d});
    }
    if (const auto* ma = std::get_if<MassAction>(&def.rate)) {
      r.rate = *ma;
    } else {
      r.rate = parse_expression(std::get<ExplicitRate>(def.rate).expression, m.symbols_);
    }
    m.reactions_.push_back(std::move(r));
  }
  return m;
}

std::size_t Model::species_index(std::string_view name) const {
  auto symbol = symbols_.find(name);
  if (!symbol || symbol->kind != SymbolKind::Species) {
    throw Error("unknown species '" + std::string(name) + "'");
  }
  return symbol->index;
}

}  // namespace smc
