#pragma once

#include <cstdint>

namespace tailweight {

/// Replication-addressed seeding: (base_seed, stream_id) selects an
/// independent stream; identical pairs reproduce identical draws regardless
/// of evaluation order or thread schedule.
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Counter-based uniform generator: output i is the splitmix64 finalizer
/// applied at position i of a stream keyed by (base_seed, stream_id).
/// Observation i of a sample consumes counters 2i (mixture branch) and
/// 2i + 1 (inverse-transform uniform).
class CounterRng {
 public:
  explicit CounterRng(SeedSpec seed) : key_(derive_key(seed)) {}

  /// Uniform draw in the open interval (0, 1) at the given counter.
  double uniform(std::uint64_t counter) const {
    const std::uint64_t bits =
        mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    return (double(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t derive_key(SeedSpec seed) {
    const std::uint64_t a = mix(seed.base_seed + 0xD1B54A32D192ED03ULL);
    return mix(a ^ (seed.stream_id * 0x8CB92BA72F3D8DD7ULL + 0x2545F4914F6CDD1DULL));
  }

  std::uint64_t key_;
};

}  // namespace tailweight
