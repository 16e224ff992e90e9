#ifndef TLPS_RNG_HPP
#define TLPS_RNG_HPP

#include <cstdint>

namespace tlps {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Counter-based generator: draw i is a pure function of (seed, stream, i), so
// every run with the same seed produces the same sequence no matter how work
// is scheduled around it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(splitmix64(seed ^ splitmix64(stream))) {}

  std::uint64_t next_u64() { return splitmix64(base_ + counter_++); }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, n), modulo-bias free
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t reject_below = (-n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= reject_below) return r % n;
    }
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Stable sub-seed for a named stream of a run-level seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag ^ 0xA5A5A5A5A5A5A5A5ull));
}

}  // namespace tlps

#endif
