#include "odyn/rng.hpp"

namespace odyn {

std::uint64_t derive_seed(std::uint64_t master, StreamPurpose purpose,
                          std::uint64_t index) noexcept {
  std::uint64_t key = mix64(master);
  key = mix64(key ^ static_cast<std::uint64_t>(purpose));
  key = mix64(key ^ index);
  return key;
}

std::uint32_t StreamRng::next_below(std::uint32_t bound) noexcept {
  if (bound < 2) return 0;  // no draw consumed
  // Reject draws below 2^64 mod bound so the remainder is exactly uniform.
  std::uint64_t threshold = (0 - std::uint64_t{bound}) % bound;
  for (;;) {
    std::uint64_t u = next_u64();
    if (u >= threshold) return static_cast<std::uint32_t>(u % bound);
  }
}

}  // namespace odyn
