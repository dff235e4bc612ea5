#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "smc/checker.hpp"
#include "smc/formula.hpp"
#include "smc/model_io.hpp"
#include "smc/orchestrator.hpp"
#include "smc/rng.hpp"
#include "smc/ssa.hpp"

namespace smc::cli {

namespace {

/// Thrown for argument problems found after CLI11 has accepted the flags.
struct UsageError : Error {
  using Error::Error;
};

struct VerifyOptions {
  std::string model_path;
  std::string formula;
  std::string formula_file;
  double t_max = 0.0;
  double epsilon = 0.025;
  double alpha = 0.01;
  std::string mode = "iterative";
  std::int64_t n = 0;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;
  std::string trace_out;
  std::size_t trace_count = 1;
  std::string report = "json";
  std::string sweep;
};

struct SimulateOptions {
  std::string model_path;
  double t_max = 0.0;
  std::optional<std::uint64_t> seed;
  std::size_t count = 1;
  std::string out_path;
};

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::shared_ptr<const Model> load_model(const std::string& path) {
  return std::make_shared<const Model>(Model::compile(read_network_file(path)));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_real(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// "start:stop:step" -> start, start + step, ... up to stop inclusive.
std::vector<double> parse_sweep(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos) throw UsageError("--sweep-tmax expects start:stop:step");
  const double start = parse_real(std::string_view(spec).substr(0, first));
  const double stop = parse_real(std::string_view(spec).substr(first + 1, second - first - 1));
  const double step = parse_real(std::string_view(spec).substr(second + 1));
  if (!(start > 0.0) || !(stop >= start) || !(step > 0.0)) {
    throw UsageError("--sweep-tmax needs 0 < start <= stop and step > 0");
  }
  const auto count = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> points;
  for (std::int64_t k = 0; k < count; ++k) {
    // Snap to 1e-12 so 0.2 + 2 * 0.2 prints as 0.6.
    points.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
  }
  return points;
}

std::filesystem::path replica_path(const std::filesystem::path& base, std::uint64_t replica) {
  auto name = base.stem().string() + "_r" + std::to_string(replica) + base.extension().string();
  return base.parent_path() / name;
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace, const Model& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_trace_csv(out, trace, model.species_names());
  if (!out) throw IoError("error while writing " + path.string());
}

/// On-the-fly traces may end with the one point generated past the horizon.
Trace trim_to_horizon(const Trace& trace, double t_max) {
  Trace trimmed(trace.state(0), trace.entry_time(0));
  for (std::size_t i = 1; i < trace.size() && trace.entry_time(i) <= t_max; ++i) {
    trimmed.append(trace.state(i), trace.entry_time(i));
  }
  return trimmed;
}

void write_traces(const std::string& base, const std::vector<KeptTrace>& traces, const Model& model) {
  if (traces.size() == 1) {
    write_trace_file(base, traces.front().trace, model);
    return;
  }
  for (const auto& kept : traces) write_trace_file(replica_path(base, kept.replica), kept.trace, model);
}

std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.formula.empty() == opt.formula_file.empty()) {
    throw UsageError("exactly one of --formula and --formula-file is required");
  }
  const auto mode = mode_from_string(opt.mode);
  if (!mode) throw UsageError("--mode must be iterative, conservative or fixed");
  if (*mode == Mode::Fixed && opt.n < 1) throw UsageError("--mode fixed requires --n >= 1");
  if (*mode != Mode::Fixed && opt.n != 0) throw UsageError("--n is only meaningful with --mode fixed");
  if (opt.sweep.empty() && !(opt.t_max > 0.0)) throw UsageError("--tmax must be positive");

  JobConfig cfg;
  cfg.model = load_model(opt.model_path);

  std::string formula_text = opt.formula;
  if (!opt.formula_file.empty()) {
    formula_text = read_text_file(opt.formula_file);
    while (!formula_text.empty() && std::isspace(static_cast<unsigned char>(formula_text.back()))) {
      formula_text.pop_back();
    }
  }
  cfg.formula = desugar_formula(parse_formula(formula_text, cfg.model->symbols()));
  cfg.formula_text = formula_text;
  cfg.confidence = {opt.alpha, opt.epsilon};
  cfg.master_seed = opt.seed ? *opt.seed : random_seed();
  cfg.worker_count = opt.workers == 0 ? default_workers() : opt.workers;
  cfg.mode = *mode;
  cfg.fixed_n = opt.n;
  try {
    cfg.confidence.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!opt.sweep.empty()) {
    out << "tmax,p_hat,lower,upper,n_total\n";
    for (double t : parse_sweep(opt.sweep)) {
      cfg.t_max = t;
      const EstimationReport r = estimate_probability(cfg);
      out << format_real(t) << ',' << format_real(r.p_hat) << ',' << format_real(r.lower) << ','
          << format_real(r.upper) << ',' << r.n_total << '\n';
    }
    err << "seed " << cfg.master_seed << '\n';
    return kOk;
  }

  cfg.t_max = opt.t_max;
  std::vector<KeptTrace> traces;
  if (!opt.trace_out.empty()) cfg.keep_traces = opt.trace_count;
  const BatchObserver observer = [&](std::uint64_t offset, const BatchResult& batch) {
    // Replicas 0..K-1 always live in the first batch.
    if (offset == 0) traces = batch.traces;
  };
  EstimationReport report = estimate_probability(cfg, observer);
  report.model = opt.model_path;
  if (!opt.trace_out.empty()) {
    for (auto& kept : traces) kept.trace = trim_to_horizon(kept.trace, cfg.t_max);
    write_traces(opt.trace_out, traces, *cfg.model);
  }

  out << (opt.report == "json" ? to_json(report) + "\n" : to_text(report));
  return kOk;
}

int run_simulate(const SimulateOptions& opt, std::ostream& out) {
  if (!(opt.t_max > 0.0)) throw UsageError("--tmax must be positive");
  const auto model = load_model(opt.model_path);
  const std::uint64_t seed = opt.seed ? *opt.seed : random_seed();
  std::vector<KeptTrace> traces;
  for (std::uint64_t r = 0; r < opt.count; ++r) {
    RngStream rng(replica_seed(seed, r));
    traces.push_back({r, simulate_to_time(*model, model->initial_state(), opt.t_max, rng)});
  }
  if (opt.out_path.empty()) {
    for (const auto& kept : traces) write_trace_csv(out, kept.trace, model->species_names());
  } else {
    write_traces(opt.out_path, traces, *model);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistical model checking of reaction networks", "smc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  VerifyOptions v;
  auto* verify = app.add_subcommand("verify", "Estimate the probability that a formula holds");
  verify->add_option("--model", v.model_path, "Model file (JSON)")->required();
  verify->add_option("--formula", v.formula, "Formula text");
  verify->add_option("--formula-file", v.formula_file, "File holding the formula");
  verify->add_option("--tmax", v.t_max, "Simulation horizon");
  verify->add_option("--epsilon", v.epsilon, "Interval half-width")->capture_default_str();
  verify->add_option("--alpha", v.alpha, "One minus the confidence level")->capture_default_str();
  verify->add_option("--mode", v.mode, "iterative, conservative or fixed")
      ->check(CLI::IsMember({"iterative", "conservative", "fixed"}))
      ->capture_default_str();
  verify->add_option("--n", v.n, "Sample size for --mode fixed");
  verify->add_option("--seed", v.seed, "Master seed (random when omitted)");
  verify->add_option("--workers", v.workers, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
  verify->add_option("--trace-out", v.trace_out, "Write the first traces as CSV");
  verify->add_option("--trace-count", v.trace_count, "Number of traces for --trace-out")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--report", v.report, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  verify->add_option("--sweep-tmax", v.sweep, "start:stop:step; prints one CSV row per horizon");

  SimulateOptions s;
  auto* simulate = app.add_subcommand("simulate", "Write full SSA trajectories as CSV");
  simulate->add_option("--model", s.model_path, "Model file (JSON)")->required();
  simulate->add_option("--tmax", s.t_max, "Simulation horizon")->required();
  simulate->add_option("--seed", s.seed, "Master seed (random when omitted)");
  simulate->add_option("--count", s.count, "Number of trajectories")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--out", s.out_path, "Output CSV (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*verify) return run_verify(v, out, err);
    return run_simulate(s, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ModelFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kFormatError;
  } catch (const ValidationError& e) {
    err << "error: invalid model\n";
    for (const auto& violation : e.violations()) err << "  " << violation.subject << ": " << violation.message << '\n';
    return kValidationError;
  } catch (const ParseError& e) {
    err << "error: formula: " << e.what() << '\n';
    return kFormulaError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
}

}  // namespace smc::cli
