#pragma once

#include <cstdint>
#include <random>

namespace ppf {

struct RandomSeed {
  std::uint64_t value = 0;
};

/// Named sub-streams of a seed. Each simulator subsystem draws from its own
/// stream so that, for example, changing the offspring count does not perturb
/// the parent locations.
enum class Stream : std::uint64_t {
  Points = 1,
  Parents = 2,
  Offspring = 3,
  Field = 4,
  ThinningFirst = 5,
  ThinningSecond = 6,
  Noise = 7,
};

/// Deterministic 64-bit generator for one (seed, stream) pair. The engine is
/// std::mt19937_64 seeded through a SplitMix64 mix of both values.
class RandomStream {
 public:
  RandomStream(RandomSeed seed, Stream stream);
  RandomStream(RandomSeed seed, std::uint64_t stream);

  /// Child seed derived from this stream, for nested simulations.
  RandomSeed split();

  /// Uniform on [0, 1).
  double uniform();
  double normal();
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace ppf
