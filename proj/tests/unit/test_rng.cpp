#include <doctest.h>

#include <algorithm>
#include <set>

#include "smc/rng.hpp"

using namespace smc;

TEST_CASE("seed streams are prefix-stable") {
  const auto four = derive_seed_stream(12345, 4);
  const auto eight = derive_seed_stream(12345, 8);
  CHECK(std::equal(four.begin(), four.end(), eight.begin()));
  for (std::size_t i = 0; i < eight.size(); ++i) CHECK(eight[i] == replica_seed(12345, i));
}

TEST_CASE("seed streams are deterministic and distinct") {
  const auto a = derive_seed_stream(99, 1000);
  CHECK(a == derive_seed_stream(99, 1000));
  CHECK(std::set<std::uint64_t>(a.begin(), a.end()).size() == 1000);
  CHECK_THROWS_AS(derive_seed_stream(99, 0), std::invalid_argument);
}

TEST_CASE("property: seeds are distinct across masters and large index ranges") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ull, 1ull, 2ull, 0xffffffffffffffffull}) {
    for (std::uint64_t i = 0; i < 20000; ++i) seen.insert(replica_seed(master, i));
  }
  CHECK(seen.size() == 80000);
}

TEST_CASE("uniform stays inside the open unit interval") {
  RngStream a(7);
  RngStream b(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform();
    CHECK((u > 0.0 && u < 1.0));
    CHECK(u == b.uniform());
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}
