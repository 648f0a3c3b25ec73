#pragma once

#include <cstdint>
#include <random>

namespace txpolicy {

// splitmix64 finalizer; spreads low-entropy seeds over the full state space
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic uniform source. One stream is owned by exactly one worker;
// derived() yields decorrelated streams for (campaign seed, worker index).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(mix64(seed)) {}

  static RandomStream derived(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(mix64(seed) ^ mix64(index + 0x6a09e667f3bcc909ULL));
  }

  // uniform on [0, 1) with 53-bit resolution
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace txpolicy
