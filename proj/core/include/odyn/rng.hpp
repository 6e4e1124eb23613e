#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace odyn {

// SplitMix64 finalizer (Vigna's constants); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream labels for deriving independent substreams from one master seed.
// Tags are arbitrary fixed constants; adding a label never perturbs the
// output of existing streams.
enum class StreamPurpose : std::uint64_t {
  Edges = 0x45444745535F3031ULL,
  Thresholds = 0x54485245535F3031ULL,
  Opinions = 0x4F50494E535F3031ULL,
  Bisection = 0x42495345435F3031ULL,
  Coupling = 0x434F5550455F3031ULL,
  Trial = 0x545249414C5F3031ULL,
  SeedPick = 0x53454544535F3031ULL,
};

// Deterministic stream key from (master, purpose, index). Scheme "sm64/v1".
std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                          std::uint64_t index = 0) noexcept;

// Counter-based stream: output i is mix64(key + (i+1)*GAMMA), i.e. a
// SplitMix64 sequence whose state starts at the derived key. Pure integer
// arithmetic, so sequences are identical across platforms.
class StreamRng {
 public:
  StreamRng(std::uint64_t master, StreamPurpose purpose,
            std::uint64_t stream_index = 0) noexcept
      : state_(derive_seed(master, purpose, stream_index)) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Consumes exactly one draw regardless of p.
  bool bernoulli(double p) noexcept { return next_double() < p; }

  // Unbiased integer in [0, bound); bound >= 1.
  std::uint32_t next_below(std::uint32_t bound) noexcept;

  // Fisher-Yates shuffle with next_below, back to front.
  template <typename T>
  void shuffle(std::span<T> values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = next_below(static_cast<std::uint32_t>(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept { return next_u64(); }

 private:
  std::uint64_t state_;
};

}  // namespace odyn
