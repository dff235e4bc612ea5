#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "smc/ssa.hpp"

using namespace smc;

TEST_CASE("delay is exponential with rate a0") {
  const auto model = test::constant_rate_model({2.0});
  RngStream rng(1);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::get<NextEvent>(next_event(*model, model->initial_state(), rng)).delay;
  // Exp(2): mean 1/2, standard deviation 1/2.
  const double se = 0.5 / std::sqrt(n);
  CHECK(std::abs(sum / n - 0.5) < 3 * se);
}

TEST_CASE("reaction selection follows the propensity ratios") {
  const auto model = test::constant_rate_model({1.0, 3.0});
  RngStream rng(2);
  const int n = 100000;
  int second = 0;
  for (int i = 0; i < n; ++i) second += std::get<NextEvent>(next_event(*model, model->initial_state(), rng)).reaction == 1;
  const double se = std::sqrt(0.75 * 0.25 / n);
  CHECK(std::abs(static_cast<double>(second) / n - 0.75) < 3 * se);
}

TEST_CASE("no enabled reaction is absorption") {
  const auto model = test::death_model(0);
  RngStream rng(3);
  CHECK(std::holds_alternative<Absorbed>(next_event(*model, model->initial_state(), rng)));

  const Trace trace = simulate_to_time(*model, model->initial_state(), 2.5, rng);
  CHECK(trace.size() == 1);
  CHECK(trace.sojourn(0) == 2.5);
}

TEST_CASE("t_max must be positive") {
  const auto model = test::death_model(3);
  RngStream rng(4);
  CHECK_THROWS_AS(simulate_to_time(*model, model->initial_state(), 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(simulate_to_time(*model, model->initial_state(), -1.0, rng), std::invalid_argument);
}

TEST_CASE("linear death transient mean") {
  const auto model = test::death_model(100);
  const int n = 10000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream rng(replica_seed(11, static_cast<std::uint64_t>(i)));
    const Trace t = simulate_to_time(*model, model->initial_state(), 1.0, rng);
    const double x = static_cast<double>(t.state(t.size() - 1)[0]);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean - 100 * std::exp(-1.0)) < 3 * se);
}

TEST_CASE("property: pure-death extinction probability matches the convolution") {
  const auto model = test::death_model(2);
  const int n = 20000;
  for (double t : {0.25, 1.0, 2.0}) {
    int extinct = 0;
    for (int i = 0; i < n; ++i) {
      RngStream rng(replica_seed(21, static_cast<std::uint64_t>(i)));
      const Trace trace = simulate_to_time(*model, model->initial_state(), t, rng);
      extinct += trace.state_at(t)[0] == 0;
    }
    const double p = test::pure_death_extinction(t);
    CAPTURE(t);
    CHECK(std::abs(static_cast<double>(extinct) / n - p) < 3 * std::sqrt(p * (1 - p) / n));
  }
}

TEST_CASE("property: sojourns add up to t_max and traces are deterministic") {
  test::Gen g(31);
  for (int i = 0; i < 300; ++i) {
    const Model model = Model::compile(g.network());
    const double t_max = g.real(0.1, 5.0);
    RngStream a(static_cast<std::uint64_t>(i));
    RngStream b(static_cast<std::uint64_t>(i));
    const Trace trace = simulate_to_time(model, model.initial_state(), t_max, a);
    CHECK(trace == simulate_to_time(model, model.initial_state(), t_max, b));
    double total = 0.0;
    for (std::size_t j = 0; j < trace.size(); ++j) {
      CHECK(trace.sojourn(j) >= 0.0);
      if (j + 1 < trace.size()) CHECK(trace.sojourn(j) > 0.0);
      total += trace.sojourn(j);
    }
    CHECK(std::abs(total - t_max) <= 1e-9 * t_max);
  }
}
