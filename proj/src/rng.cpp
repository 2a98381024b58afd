#include "fewn/rng.hpp"

namespace fewn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Engine substream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t k1 = splitmix64(seed);
  const std::uint64_t k2 = splitmix64(k1 ^ splitmix64(index));
  return Engine(k2);
}

}  // namespace fewn
