#pragma once

#include <cstdint>
#include <random>

namespace erucb {

/// Identifies one reproducible random stream. Equal (seed, stream_id) pairs
/// reproduce identical sequences; distinct pairs are decorrelated.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Engine for one lane of a stream. Lanes keep consumers within a run
/// independent (arm i samples on lane i, strategy randomness on its own lane).
std::mt19937_64 make_engine(const RngStream& stream, std::uint64_t lane = 0);

}  // namespace erucb
