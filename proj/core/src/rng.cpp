#include "smc/rng.hpp"

#include <stdexcept>

namespace smc {

namespace {

// splitmix64 output function; a bijection on 64-bit words.
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t index) {
  // Odd multiplier: index -> master + (index+1)*gamma is injective mod 2^64.
  return mix(master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

std::vector<std::uint64_t> derive_seed_stream(std::uint64_t master_seed, std::size_t count) {
  if (count == 0) throw std::invalid_argument("derive_seed_stream: count must be at least 1");
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = replica_seed(master_seed, i);
  return seeds;
}

}  // namespace smc
