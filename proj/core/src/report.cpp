#include "smc/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "smc/error.hpp"

namespace smc {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Iterative: return "iterative";
    case Mode::Conservative: return "conservative";
    case Mode::Fixed: return "fixed";
  }
  return "?";
}

std::optional<Mode> mode_from_string(std::string_view text) {
  if (text == "iterative") return Mode::Iterative;
  if (text == "conservative") return Mode::Conservative;
  if (text == "fixed") return Mode::Fixed;
  return std::nullopt;
}

std::string to_json(const EstimationReport& r) {
  using nlohmann::json;
  json iterations = json::array();
  for (const auto& it : r.iterations) {
    iterations.push_back({{"requested", it.requested}, {"trials", it.trials}, {"successes", it.successes}});
  }
  json doc = {
      {"tool_version", r.tool_version},
      {"model", r.model},
      {"formula", r.formula},
      {"t_max", r.t_max},
      {"mode", to_string(r.mode)},
      {"fixed_n", r.fixed_n ? json(*r.fixed_n) : json(nullptr)},
      {"alpha", r.alpha},
      {"epsilon", r.epsilon},
      {"master_seed", r.master_seed},
      {"worker_count", r.worker_count},
      {"rng", r.rng},
      {"p_hat", r.p_hat},
      {"lower", r.lower},
      {"upper", r.upper},
      {"successes", r.successes},
      {"n_total", r.n_total},
      {"errors", r.errors},
      {"iterations", iterations},
      {"mean_path_length", r.mean_path_length},
      {"wall_time_seconds", r.wall_time_seconds},
  };
  return doc.dump(2);
}

EstimationReport report_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    EstimationReport r;
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.model = doc.at("model").get<std::string>();
    r.formula = doc.at("formula").get<std::string>();
    r.t_max = doc.at("t_max").get<double>();
    auto mode = mode_from_string(doc.at("mode").get<std::string>());
    if (!mode) throw Error("report: unknown mode");
    r.mode = *mode;
    if (!doc.at("fixed_n").is_null()) r.fixed_n = doc.at("fixed_n").get<std::int64_t>();
    r.alpha = doc.at("alpha").get<double>();
    r.epsilon = doc.at("epsilon").get<double>();
    r.master_seed = doc.at("master_seed").get<std::uint64_t>();
    r.worker_count = doc.at("worker_count").get<unsigned>();
    r.rng = doc.at("rng").get<std::string>();
    r.p_hat = doc.at("p_hat").get<double>();
    r.lower = doc.at("lower").get<double>();
    r.upper = doc.at("upper").get<double>();
    r.successes = doc.at("successes").get<std::int64_t>();
    r.n_total = doc.at("n_total").get<std::int64_t>();
    r.errors = doc.at("errors").get<std::int64_t>();
    for (const auto& it : doc.at("iterations")) {
      r.iterations.push_back({it.at("requested").get<std::int64_t>(), it.at("trials").get<std::int64_t>(),
                              it.at("successes").get<std::int64_t>()});
    }
    r.mean_path_length = doc.at("mean_path_length").get<double>();
    r.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const EstimationReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "formula      %s\n"
                "estimate     %.5f  [%.5f, %.5f]  (confidence %.4g%%, epsilon %.4g)\n"
                "samples      %lld  (%s, %zu batch%s, %lld errors)\n"
                "path length  %.2f mean\n"
                "seed         %llu  (%u workers, %.3f s)\n",
                r.formula.c_str(), r.p_hat, r.lower, r.upper, 100.0 * (1.0 - r.alpha), r.epsilon,
                static_cast<long long>(r.n_total), std::string(to_string(r.mode)).c_str(), r.iterations.size(),
                r.iterations.size() == 1 ? "" : "es", static_cast<long long>(r.errors), r.mean_path_length,
                static_cast<unsigned long long>(r.master_seed), r.worker_count, r.wall_time_seconds);
  return buf;
}

}  // namespace smc
