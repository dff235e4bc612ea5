#include <doctest.h>

#include "fixtures.hpp"
#include "smc/checker.hpp"
#include "smc/offline.hpp"

using namespace smc;

namespace {

CheckResult verify(const std::string& text, const Model& m, double t_max, std::uint64_t seed) {
  RngStream rng(seed);
  return simulate_verify(desugar_formula(parse_formula(text, m.symbols())), m, m.initial_state(), t_max, rng);
}

/// Points of the on-the-fly trace that were entered at or before t_max.
std::size_t usable_points(const Trace& t, double t_max) {
  std::size_t n = 0;
  while (n < t.size() && t.entry_time(n) <= t_max) ++n;
  return n;
}

}  // namespace

TEST_CASE("Kleene connectives") {
  using V = Verdict;
  CHECK(verdict_not(V::Unknown) == V::Unknown);
  CHECK(verdict_and(V::False, V::Unknown) == V::False);
  CHECK(verdict_and(V::True, V::Unknown) == V::Unknown);
  CHECK(verdict_or(V::True, V::Unknown) == V::True);
  CHECK(verdict_or(V::False, V::Unknown) == V::Unknown);
}

TEST_CASE("pessimistic finalization") {
  CHECK(!finalize_verdict(Verdict::Unknown));
  CHECK(finalize_verdict(Verdict::True));
  CHECK(!finalize_verdict(Verdict::False));
}

TEST_CASE("atoms never simulate") {
  const auto m = test::death_model(7);
  const auto r = verify("x >= 5", *m, 1.0, 1);
  CHECK(r.verdict == Verdict::True);
  CHECK(r.trace.size() == 1);
}

TEST_CASE("bounded globally runs exactly to the first point past the bound") {
  const Model m = Model::compile(test::birth_death_network());
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = verify("G[0,10](x>=0)", m, 10.0, seed);
    CHECK(r.verdict == Verdict::True);
    REQUIRE(r.trace.size() >= 2);
    CHECK(r.trace.entry_time(r.trace.size() - 1) > 10.0);
    CHECK(r.trace.entry_time(r.trace.size() - 2) <= 10.0);
  }
}

TEST_CASE("unbounded finally on pure death stops at extinction") {
  for (std::int64_t n = 1; n <= 20; ++n) {
    const auto m = test::death_model(n);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto r = verify("F(x==0)", *m, 1e6, seed);
      CHECK(r.verdict == Verdict::True);
      CHECK(r.trace.event_count() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("undecided at the horizon is unknown") {
  const Model m = Model::compile(test::birth_death_network(5, 10.0, 1.0));
  // x never exceeds 10^6 within a short horizon, and the unbounded until
  // could still be satisfied later.
  CHECK(verify("F(x >= 1000000)", m, 0.5, 3).verdict == Verdict::Unknown);
  CHECK(verify("F[0,0.5](x >= 1000000)", m, 0.5, 3).verdict == Verdict::False);
  const auto extinct = test::death_model(0);
  CHECK(verify("X[0,inf) x >= 0", *extinct, 1.0, 3).verdict == Verdict::False);
}

TEST_CASE("surface formulas are rejected") {
  const auto m = test::death_model(2);
  RngStream rng(1);
  CHECK_THROWS_AS(simulate_verify(parse_formula("F x == 0", m->symbols()), *m, m->initial_state(), 1.0, rng),
                  std::invalid_argument);
}

TEST_CASE("property: decided verdicts match the offline oracle; traces are prefixes") {
  test::Gen g(0xc0ffee);
  int decided = 0;
  for (int i = 0; i < 1000; ++i) {
    const Model m = Model::compile(g.network());
    const Formula f = desugar_formula(g.formula(m, 1.5, 3));
    const double t_max = g.real(0.5, 3.0);
    const auto seed = static_cast<std::uint64_t>(i);
    RngStream online_rng(seed);
    RngStream full_rng(seed);
    const CheckResult online = simulate_verify(f, m, m.initial_state(), t_max, online_rng);
    const Trace full = simulate_to_time(m, m.initial_state(), t_max, full_rng);

    const std::size_t usable = usable_points(online.trace, t_max);
    REQUIRE(usable <= full.size());
    CHECK(online.trace.size() <= usable + 1);
    for (std::size_t k = 0; k < usable; ++k) {
      CHECK(online.trace.state(k) == full.state(k));
      CHECK(online.trace.entry_time(k) == full.entry_time(k));
    }

    if (online.verdict == Verdict::Unknown) continue;
    ++decided;
    CAPTURE(f.to_string());
    CHECK(finalize_verdict(online.verdict) == check_trace_offline(f, full, 0, m.parameters()));
  }
  CHECK(decided > 700);
}

TEST_CASE("property: finally stops at the first satisfying point") {
  test::Gen g(1234);
  for (int i = 0; i < 500; ++i) {
    const Model m = Model::compile(g.network());
    const Formula goal = g.atom(m);
    const double t_max = g.real(0.5, 3.0);
    RngStream rng(static_cast<std::uint64_t>(i));
    const CheckResult r = simulate_verify(desugar_formula(Formula::finally({}, goal)), m, m.initial_state(), t_max, rng);
    const Trace& t = r.trace;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) CHECK(!evaluate_atom(goal, t.state(k), m.parameters()));
    const std::size_t last = t.size() - 1;
    const bool satisfied = evaluate_atom(goal, t.state(last), m.parameters()) && t.entry_time(last) <= t_max;
    const bool absorbed = !satisfied && t.entry_time(last) <= t_max;
    CHECK(r.verdict == (satisfied ? Verdict::True : absorbed ? Verdict::False : Verdict::Unknown));
    if (absorbed) {
      RngStream probe(static_cast<std::uint64_t>(i));
      const Trace full = simulate_to_time(m, m.initial_state(), t_max, probe);
      CHECK(full.size() == t.size());
    }
  }
}

TEST_CASE("property: formulas whose horizon fits in t_max are always decided") {
  test::Gen g(999);
  int checked = 0;
  while (checked < 500) {
    const Model m = Model::compile(g.network());
    const Formula f = g.formula(m, 1.0, 3);
    const double t_max = g.real(1.0, 4.0);
    if (temporal_horizon(f) > t_max) continue;
    ++checked;
    RngStream rng(static_cast<std::uint64_t>(checked));
    CAPTURE(f.to_string());
    CHECK(simulate_verify(desugar_formula(f), m, m.initial_state(), t_max, rng).verdict != Verdict::Unknown);
  }
}
