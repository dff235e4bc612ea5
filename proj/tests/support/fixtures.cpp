#include "fixtures.hpp"

#include <cmath>
#include <limits>

namespace smc::test {

ReactionNetwork death_network(std::int64_t x0, double k) {
  ReactionNetwork net;
  net.species = {{"x", x0}};
  net.reactions = {{"death", {{"x", 1}}, {}, MassAction{k}}};
  return net;
}

std::shared_ptr<const Model> death_model(std::int64_t x0, double k) {
  return std::make_shared<const Model>(Model::compile(death_network(x0, k)));
}

ReactionNetwork birth_death_network(std::int64_t x0, double b, double d) {
  ReactionNetwork net;
  net.species = {{"x", x0}};
  net.parameters = {{"b", b}, {"d", d}};
  net.reactions = {{"birth", {}, {{"x", 1}}, ExplicitRate{"b"}},
                   {"death", {{"x", 1}}, {}, ExplicitRate{"d * x"}}};
  return net;
}

std::shared_ptr<const Model> constant_rate_model(const std::vector<double>& rates) {
  ReactionNetwork net;
  net.species = {{"x", 0}};
  for (std::size_t j = 0; j < rates.size(); ++j) {
    net.reactions.push_back({"r" + std::to_string(j), {}, {{"x", 1}}, MassAction{rates[j]}});
  }
  return std::make_shared<const Model>(Model::compile(net));
}

std::string model_path(const std::string& file) { return std::string(SMC_MODELS_DIR) + "/" + file; }

double pure_death_extinction(double t) { return 1.0 - 2.0 * std::exp(-t) + std::exp(-2.0 * t); }

std::int64_t Gen::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

double Gen::real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

bool Gen::chance(double p) { return real(0.0, 1.0) < p; }

ReactionNetwork Gen::network() {
  ReactionNetwork net;
  const auto species = integer(1, 3);
  for (std::int64_t s = 0; s < species; ++s) {
    net.species.push_back({"x" + std::to_string(s), integer(0, 8)});
  }
  net.parameters["k"] = real(0.5, 3.0);
  const auto pick = [&] { return net.species[static_cast<std::size_t>(integer(0, species - 1))].name; };
  const auto reactions = integer(1, 4);
  for (std::int64_t r = 0; r < reactions; ++r) {
    ReactionDefinition def;
    def.name = "r" + std::to_string(r);
    const auto reactant_count = integer(0, 2);
    for (std::int64_t i = 0; i < reactant_count; ++i) def.reactants[pick()] += integer(1, 2);
    const auto product_count = integer(0, 2);
    for (std::int64_t i = 0; i < product_count; ++i) def.products[pick()] += 1;
    if (chance(0.3)) {
      // Explicit rate proportional to the first reactant, or constant.
      def.rate = ExplicitRate{def.reactants.empty() ? "k" : "k * " + def.reactants.begin()->first};
    } else {
      def.rate = MassAction{real(0.2, 3.0)};
    }
    net.reactions.push_back(std::move(def));
  }
  return net;
}

Formula Gen::atom(const Model& model) {
  const auto& names = model.species_names();
  const auto var = [&] {
    const auto i = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(names.size()) - 1));
    return Expression::variable({SymbolKind::Species, i}, names[i]);
  };
  static constexpr Comparison kOps[] = {Comparison::Less,  Comparison::LessEqual, Comparison::GreaterEqual,
                                        Comparison::Greater, Comparison::Equal,   Comparison::NotEqual};
  const Comparison op = kOps[integer(0, 5)];
  Expression lhs = chance(0.2) ? Expression::binary(BinaryOp::Add, var(), var()) : var();
  return Formula::atom(lhs, op, Expression::literal(static_cast<double>(integer(0, 10))));
}

Interval Gen::interval(double scale) {
  if (chance(0.25)) return {};
  const double lower = chance(0.5) ? 0.0 : real(0.0, scale);
  const double upper = chance(0.15) ? std::numeric_limits<double>::infinity() : lower + real(0.0, scale);
  return {lower, upper};
}

Formula Gen::formula(const Model& model, double scale, int depth) {
  if (depth <= 0 || chance(0.25)) return atom(model);
  switch (integer(0, 7)) {
    case 0: return Formula::negation(formula(model, scale, depth - 1));
    case 1: return Formula::conjunction(formula(model, scale, depth - 1), formula(model, scale, depth - 1));
    case 2: return Formula::disjunction(formula(model, scale, depth - 1), formula(model, scale, depth - 1));
    case 3: return Formula::next(interval(scale), formula(model, scale, depth - 1));
    case 4:
    case 5:
      return Formula::until(interval(scale), formula(model, scale, depth - 1), formula(model, scale, depth - 1));
    case 6: return Formula::finally(interval(scale), formula(model, scale, depth - 1));
    default: return Formula::globally(interval(scale), formula(model, scale, depth - 1));
  }
}

Trace Gen::trace(const Model& model, std::size_t points) {
  const auto random_state = [&] {
    State s;
    for (std::size_t i = 0; i < model.species_count(); ++i) s.counts.push_back(integer(0, 10));
    return s;
  };
  Trace trace(random_state(), 0.0);
  double t = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    t += real(0.01, 1.0);
    trace.append(random_state(), t);
  }
  trace.close(t + real(0.01, 1.0));
  return trace;
}

}  // namespace smc::test
