#include "ppf/rng.hpp"

#include <cmath>

#include "ppf/errors.hpp"

namespace ppf {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(RandomSeed seed, Stream stream)
    : RandomStream(seed, static_cast<std::uint64_t>(stream)) {}

RandomStream::RandomStream(RandomSeed seed, std::uint64_t stream)
    : engine_(mix64(mix64(seed.value) ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

RandomSeed RandomStream::split() { return RandomSeed{mix64(engine_())}; }

double RandomStream::uniform() {
  // 53 random mantissa bits, exactly representable and strictly below 1.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(engine_);
}

}  // namespace ppf
