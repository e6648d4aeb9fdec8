#include "ckmig/rng.hpp"

namespace ckmig {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(splitmix64(seed)),
      static_cast<std::uint32_t>(splitmix64(seed) >> 32),
      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(stream_id))),
      static_cast<std::uint32_t>(splitmix64(seed ^ splitmix64(stream_id)) >> 32),
      static_cast<std::uint32_t>(stream_id),
      static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace ckmig
