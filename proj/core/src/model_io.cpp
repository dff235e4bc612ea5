#include "smc/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace smc {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ModelFormatError(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) throw ModelFormatError(where + ": missing key '" + key + "'");
  return *it;
}

std::map<std::string, std::int64_t> read_stoichiometry(const json& object, const std::string& where) {
  if (!object.is_object()) throw ModelFormatError(where + " must be an object");
  std::map<std::string, std::int64_t> out;
  for (const auto& [name, value] : object.items()) {
    if (!value.is_number_integer()) {
      throw ModelFormatError(where + ": coefficient of '" + name + "' must be an integer");
    }
    out[name] = value.get<std::int64_t>();
  }
  return out;
}

ReactionNetwork from_json(const json& doc) {
  if (!doc.is_object()) throw ModelFormatError("model document must be a JSON object");
  reject_unknown_keys(doc, {"species", "parameters", "reactions", "description"}, "model");

  ReactionNetwork net;
  const json& species = require(doc, "species", "model");
  if (!species.is_array()) throw ModelFormatError("'species' must be an array");
  for (const auto& s : species) {
    if (!s.is_object()) throw ModelFormatError("species entries must be objects");
    reject_unknown_keys(s, {"name", "initial"}, "species");
    const json& name = require(s, "name", "species");
    const json& initial = require(s, "initial", "species");
    if (!name.is_string()) throw ModelFormatError("species name must be a string");
    if (!initial.is_number_integer()) {
      throw ModelFormatError("species '" + name.get<std::string>() + "': initial must be an integer");
    }
    net.species.push_back({name.get<std::string>(), initial.get<std::int64_t>()});
  }

  if (auto it = doc.find("parameters"); it != doc.end()) {
    if (!it->is_object()) throw ModelFormatError("'parameters' must be an object");
    for (const auto& [name, value] : it->items()) {
      if (!value.is_number()) throw ModelFormatError("parameter '" + name + "' must be a number");
      net.parameters[name] = value.get<double>();
    }
  }

  const json& reactions = require(doc, "reactions", "model");
  if (!reactions.is_array()) throw ModelFormatError("'reactions' must be an array");
  for (const auto& r : reactions) {
    if (!r.is_object()) throw ModelFormatError("reaction entries must be objects");
    reject_unknown_keys(r, {"name", "reactants", "products", "mass_action", "rate"}, "reaction");
    const json& name = require(r, "name", "reaction");
    if (!name.is_string()) throw ModelFormatError("reaction name must be a string");
    ReactionDefinition def;
    def.name = name.get<std::string>();
    const std::string where = "reaction '" + def.name + "'";
    if (auto it = r.find("reactants"); it != r.end()) def.reactants = read_stoichiometry(*it, where + " reactants");
    if (auto it = r.find("products"); it != r.end()) def.products = read_stoichiometry(*it, where + " products");

    const bool has_mass_action = r.contains("mass_action");
    const bool has_rate = r.contains("rate");
    if (has_mass_action == has_rate) {
      throw ModelFormatError(where + ": exactly one of 'mass_action' and 'rate' is required");
    }
    if (has_mass_action) {
      if (!r["mass_action"].is_number()) throw ModelFormatError(where + ": 'mass_action' must be a number");
      def.rate = MassAction{r["mass_action"].get<double>()};
    } else {
      if (!r["rate"].is_string()) throw ModelFormatError(where + ": 'rate' must be a string");
      def.rate = ExplicitRate{r["rate"].get<std::string>()};
    }
    net.reactions.push_back(std::move(def));
  }
  return net;
}

}  // namespace

ReactionNetwork parse_network_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed JSON: ") + e.what());
  }
  return from_json(doc);
}

std::string network_to_json(const ReactionNetwork& network) {
  json doc;
  doc["species"] = json::array();
  for (const auto& s : network.species) {
    doc["species"].push_back({{"name", s.name}, {"initial", s.initial_count}});
  }
  doc["parameters"] = json::object();
  for (const auto& [name, value] : network.parameters) doc["parameters"][name] = value;
  doc["reactions"] = json::array();
  for (const auto& r : network.reactions) {
    json entry{{"name", r.name}, {"reactants", json::object()}, {"products", json::object()}};
    for (const auto& [s, k] : r.reactants) entry["reactants"][s] = k;
    for (const auto& [s, k] : r.products) entry["products"][s] = k;
    if (const auto* ma = std::get_if<MassAction>(&r.rate)) {
      entry["mass_action"] = ma->constant;
    } else {
      entry["rate"] = std::get<ExplicitRate>(r.rate).expression;
    }
    doc["reactions"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

ReactionNetwork read_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error reading model file '" + path.string() + "'");
  return parse_network_json(buffer.str());
}

}  // namespace smc
