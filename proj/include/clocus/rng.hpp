#ifndef CLOCUS_RNG_HPP
#define CLOCUS_RNG_HPP

#include <cstdint>

namespace clocus {

// SplitMix64: the 64-bit mixer of Steele, Lea & Flood, chosen because its
// entire behaviour is pinned down by three constants.  Every randomized
// routine in the library takes one of these (or a seed that creates one),
// so identical seeds give identical runs on any platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform draw from {0, 1, ..., bound-1} by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Deterministic substream derivation: child sequences never overlap the
  // parent because the child is reseeded through the mixer itself.
  SplitMix64 fork() { return SplitMix64(next()); }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace clocus

#endif  // CLOCUS_RNG_HPP
