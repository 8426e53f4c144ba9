#pragma once

#include <cstdint>

namespace turretsim {

// splitmix64 finalizer; also used to derive stream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Counter-based generator: state advances by the golden-gamma increment and
// the output is the mixed counter. Cheap to seed, so every (experiment, axis,
// trial) tuple gets its own stream and results are independent of worker
// count and batch width.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by 128-bit multiply-shift.
  std::uint32_t next_below(std::uint32_t n) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint32_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stream seed for (master_seed, tag, index).
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index) {
  std::uint64_t s = mix64(master + 0x9E3779B97F4A7C15ULL * (tag + 1));
  return mix64(s + 0x9E3779B97F4A7C15ULL * (index + 1));
}

// Box-Muller normals on top of a SplitMix64 stream.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double next();

  SplitMix64& engine() { return rng_; }

 private:
  SplitMix64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace turretsim
