#pragma once

#include <cstdint>
#include <span>

namespace specsim {

// Counter-based SplitMix64 stream. Each draw advances a 64-bit counter by a
// fixed odd gamma and finalizes it, so streams derived from distinct
// (seed, stream_id) pairs are independent and reproducible bit-for-bit
// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Derives an independent stream for (seed, stream_id).
  static Rng substream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix(seed ^ mix(stream_id + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Samples an index from an unnormalized-free probability vector using a
  // single uniform draw and a CDF scan. Falls through to the last index on
  // accumulated rounding.
  int categorical(std::span<const double> probs) {
    const double u = next_double();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace specsim
