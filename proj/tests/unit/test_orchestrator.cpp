#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "smc/orchestrator.hpp"
#include "smc/rng.hpp"

using namespace smc;

namespace {

JobConfig job(std::shared_ptr<const Model> model, const std::string& formula, double t_max, std::uint64_t seed) {
  JobConfig cfg;
  cfg.formula = desugar_formula(parse_formula(formula, model->symbols()));
  cfg.formula_text = formula;
  cfg.model = std::move(model);
  cfg.t_max = t_max;
  cfg.master_seed = seed;
  return cfg;
}

/// Network whose explicit rate divides by zero as soon as x reaches 3.
std::shared_ptr<const Model> failing_model() {
  ReactionNetwork net;
  net.species = {{"x", 0}};
  net.reactions = {{"grow", {}, {{"x", 1}}, ExplicitRate{"1 / (3 - x)"}}};
  return std::make_shared<const Model>(Model::compile(net));
}

}  // namespace

TEST_CASE("batch results do not depend on the worker count") {
  JobConfig cfg = job(test::death_model(10), "F[0,1](x <= 4)", 1.0, 77);
  cfg.worker_count = 1;
  const BatchResult one = run_batch(cfg, 5, 500);
  cfg.worker_count = 8;
  const BatchResult eight = run_batch(cfg, 5, 500);
  CHECK(one == eight);
  CHECK(one.trials == 500);
}

TEST_CASE("a tautology succeeds on every replica") {
  JobConfig cfg = job(test::death_model(3), "x >= 0", 1.0, 1);
  const BatchResult r = run_batch(cfg, 0, 200);
  CHECK(r.successes == r.trials);
  CHECK(r.sum_path_length == 200);
}

TEST_CASE("pure-death extinction frequency") {
  JobConfig cfg = job(test::death_model(2), "F[0,1](x==0)", 1.0, 2024);
  cfg.worker_count = 4;
  const BatchResult r = run_batch(cfg, 0, 10000);
  const double p = test::pure_death_extinction(1.0);
  CHECK(std::abs(static_cast<double>(r.successes) / r.trials - p) < 3 * std::sqrt(p * (1 - p) / r.trials));
}

TEST_CASE("kept traces belong to the lowest replicas") {
  JobConfig cfg = job(test::death_model(4), "F(x==0)", 100.0, 3);
  cfg.keep_traces = 3;
  const BatchResult r = run_batch(cfg, 10, 50);
  REQUIRE(r.traces.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.traces[i].replica == 10 + i);
    CHECK(r.traces[i].trace.event_count() == 4);
  }
}

TEST_CASE("replica errors are counted and bounded") {
  // x reaches 3 within t_max = 50 on essentially every path.
  JobConfig cfg = job(failing_model(), "F(x >= 10)", 50.0, 9);
  CHECK_THROWS_AS(run_batch(cfg, 0, 100), BatchError);
  cfg.max_error_fraction = 1.0;
  const BatchResult r = run_batch(cfg, 0, 100);
  CHECK(r.error_count + r.trials == 100);
  CHECK(r.error_count > 90);
  CHECK(r.first_error.find("division by zero") != std::string::npos);
}

TEST_CASE("conservative mode always uses the conservative size") {
  JobConfig cfg = job(test::death_model(2), "F[0,1](x==0)", 1.0, 11);
  cfg.mode = Mode::Conservative;
  const EstimationReport r = estimate_probability(cfg);
  CHECK(r.n_total == 2648);
  CHECK(r.iterations.size() == 1);
  CHECK(r.lower <= test::pure_death_extinction(1.0));
  CHECK(test::pure_death_extinction(1.0) <= r.upper);
}

TEST_CASE("iterative mode on a tautology stops after the mirrored second batch") {
  // p_hat = 1 after the first 127 replicas; the loop rounds it to 0.975,
  // whose sample size is 304.
  JobConfig cfg = job(test::death_model(2), "x >= 0", 1.0, 12);
  const EstimationReport r = estimate_probability(cfg);
  CHECK(r.n_total == 304);
  CHECK(r.p_hat == 1.0);
  REQUIRE(r.iterations.size() == 2);
  CHECK(r.iterations[0].requested == 127);
}

TEST_CASE("fixed mode") {
  JobConfig cfg = job(test::death_model(2), "F[0,1](x==0)", 1.0, 13);
  cfg.mode = Mode::Fixed;
  cfg.fixed_n = 321;
  const EstimationReport r = estimate_probability(cfg);
  CHECK(r.n_total == 321);
  REQUIRE(r.fixed_n);
  CHECK(*r.fixed_n == 321);
  cfg.fixed_n = 0;
  CHECK_THROWS_AS(estimate_probability(cfg), std::invalid_argument);
}

TEST_CASE("identical jobs give identical reports apart from wall time") {
  JobConfig cfg = job(test::death_model(5), "F[0,0.5](x <= 2)", 1.0, 14);
  EstimationReport a = estimate_probability(cfg);
  EstimationReport b = estimate_probability(cfg);
  a.wall_time_seconds = b.wall_time_seconds = 0.0;
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("property: replica seeds are never reused within a job") {
  JobConfig cfg = job(test::death_model(2), "F[0,1](x==0)", 1.0, 15);
  std::set<std::uint64_t> seeds;
  std::uint64_t expected_offset = 0;
  const EstimationReport r = estimate_probability(cfg, [&](std::uint64_t offset, const BatchResult& batch) {
    CHECK(offset == expected_offset);
    expected_offset += static_cast<std::uint64_t>(batch.trials + batch.error_count);
    for (std::uint64_t i = offset; i < expected_offset; ++i) seeds.insert(replica_seed(cfg.master_seed, i));
  });
  CHECK(seeds.size() == static_cast<std::size_t>(r.n_total));
}

TEST_CASE("property: estimates do not depend on the worker count") {
  test::Gen g(321);
  for (int i = 0; i < 20; ++i) {
    auto model = std::make_shared<const Model>(Model::compile(g.network()));
    JobConfig cfg;
    cfg.model = model;
    cfg.formula = desugar_formula(g.formula(*model, 1.0, 2));
    cfg.t_max = 1.0;
    cfg.master_seed = static_cast<std::uint64_t>(i);
    cfg.confidence = {0.05, 0.05};
    cfg.worker_count = 1;
    const EstimationReport one = estimate_probability(cfg);
    for (unsigned w : {3u, 8u}) {
      cfg.worker_count = w;
      const EstimationReport other = estimate_probability(cfg);
      CHECK(other.p_hat == one.p_hat);
      CHECK(other.lower == one.lower);
      CHECK(other.upper == one.upper);
      CHECK(other.n_total == one.n_total);
      CHECK(other.iterations == one.iterations);
    }
  }
}

TEST_CASE("invalid job settings") {
  JobConfig cfg = job(test::death_model(2), "F[0,1](x==0)", 1.0, 1);
  JobConfig bad = cfg;
  bad.t_max = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.worker_count = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.formula = parse_formula("F x == 0", cfg.model->symbols());
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.model = nullptr;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_batch(cfg, 0, 0), std::invalid_argument);
}
