#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "smc/error.hpp"
#include "smc/network.hpp"

namespace smc {

/// File could not be opened or read.
class IoError : public Error {
 public:
  using Error::Error;
};

/// JSON syntax error or a document that does not follow the model schema.
class ModelFormatError : public Error {
 public:
  using Error::Error;
};

/// Model document layout:
///
///   {
///     "species":    [{"name": "x", "initial": 100}, ...],
///     "parameters": {"k": 1.0, ...},                       (optional)
///     "reactions":  [{"name": "death",
///                     "reactants": {"x": 1},               (optional)
///                     "products":  {},                     (optional)
///                     "mass_action": 1.0 | "rate": "k * x"}, ...]
///   }
///
/// Exactly one of "mass_action" and "rate" per reaction. Unknown keys are
/// rejected. No semantic validation happens here; see validate_network().
ReactionNetwork parse_network_json(std::string_view text);

std::string network_to_json(const ReactionNetwork& network);

ReactionNetwork read_network_file(const std::filesystem::path& path);

}  // namespace smc
