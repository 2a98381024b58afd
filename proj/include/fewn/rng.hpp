#pragma once

#include <cstdint>
#include <random>

namespace fewn {

using Engine = std::mt19937_64;

/// Independent, reproducible stream for replication `index` under `seed`.
///
/// Splitting rule: k1 = splitmix64(seed), k2 = splitmix64(k1 ^ splitmix64(index)),
/// and the engine is constructed from k2. The stream depends only on
/// (seed, index), never on which thread runs the replication or in what order.
Engine substream(std::uint64_t seed, std::uint64_t index);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fewn
