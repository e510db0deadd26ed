// rng.hpp
// Seeded random source with named substreams. One master stream per run;
// every consumer (obstacle sampler, per-agent policy, per-agent shot
// sampler, weight initializer) owns its own substream so adding or
// reordering consumers never perturbs the others.

#pragma once

#include <cstdint>
#include <random>

namespace qardns {

// Substream identifiers used by the trainer. Kept in one place so the
// derivation of any run is auditable.
namespace stream {
inline constexpr std::uint64_t kObstacles = 0x01;
inline constexpr std::uint64_t kWeightInit = 0x02;
inline constexpr std::uint64_t kPolicyBase = 0x10;  // + agent index
inline constexpr std::uint64_t kShotsBase = 0x20;   // + agent index
}  // namespace stream

class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  // Uniform double in [0, 1) built from the top 53 bits, so sequences do
  // not depend on the standard library's distribution implementations.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [lo, hi] via rejection sampling.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<int>(x % span);
  }

  std::uint64_t next() { return engine_(); }

  // Derives an independent stream from the master seed (not from the
  // current engine state), so substreams are stable no matter how many
  // draws the parent has made.
  Rng substream(std::uint64_t stream_id) const {
    return Rng(mix(seed_ ^ mix(stream_id + 0x9E3779B97F4A7C15ull)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  // splitmix64 finalizer; decorrelates nearby seeds before they reach the
  // mt19937_64 state.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qardns
