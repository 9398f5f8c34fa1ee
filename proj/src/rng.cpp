#include "erucb/rng.hpp"

namespace erucb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(const RngStream& stream, std::uint64_t lane) {
  std::uint64_t h = splitmix64(stream.seed);
  h = splitmix64(h ^ splitmix64(stream.stream_id + 0x632BE59BD9B4E019ULL));
  h = splitmix64(h ^ splitmix64(lane + 0xD6E8FEB86659FD93ULL));
  return std::mt19937_64{h};
}

}  // namespace erucb
