#pragma once

#include <cstdint>

namespace wucb {

// SplitMix64 finalizer; also used to fold key material into stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-style deterministic generator. Streams are addressed by a
// (seed, key...) tuple, so the draw for a given (time, arm) slot is the same
// no matter which policy consumed the previous slots or which worker thread
// asks for it.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static Rng keyed(std::uint64_t seed, std::uint64_t k0, std::uint64_t k1 = 0, std::uint64_t k2 = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(k0));
    h = mix64(h ^ mix64(k1));
    h = mix64(h ^ mix64(k2));
    return Rng(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Modulo bias is negligible for the small n
  // used here.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

// Substream tags. A path draws preferences, observed arm states, accounting
// states and policy randomness from separately keyed streams, so adding a
// policy or changing checkpoints never perturbs another stream.
enum class Stream : std::uint64_t {
  kPreference = 0x70726566,
  kArmState = 0x73746174,
  kAccounting = 0x61636374,
  kPolicy = 0x706f6c69,
  kMixWeights = 0x6d697877,
};

inline std::uint64_t stream_tag(Stream s) { return static_cast<std::uint64_t>(s); }

}  // namespace wucb
