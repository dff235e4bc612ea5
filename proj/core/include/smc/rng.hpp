#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace smc {

/// Per-replica pseudo-random source. Same seed, same sequence, on every
/// platform: the conversion to reals is done here rather than through
/// std::uniform_real_distribution, whose output is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    // 53 random mantissa bits, shifted by half an ulp off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  static constexpr std::string_view algorithm() { return "mt19937_64"; }

 private:
  std::mt19937_64 engine_;
};

/// Seed of replica `index` under `master_seed`. Independent of how many
/// replicas are derived, and distinct indices never collide.
std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t index);

/// Seeds for replicas 0..count-1.
std::vector<std::uint64_t> derive_seed_stream(std::uint64_t master_seed, std::size_t count);

}  // namespace smc
