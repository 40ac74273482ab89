#include "ghz/rng.hpp"

namespace ghz::harness {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine trial_stream(std::uint64_t seed, std::uint64_t trial,
                    StreamPurpose purpose) {
  const std::uint64_t k =
      splitmix64(splitmix64(splitmix64(seed) ^ trial) ^
                 static_cast<std::uint64_t>(purpose));
  std::seed_seq seq{static_cast<std::uint32_t>(k),
                    static_cast<std::uint32_t>(k >> 32)};
  return Engine(seq);
}

double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

game::GuardId uniform_guard(Engine& engine) {
  return game::GuardId(static_cast<int>(engine() >> 62) + 1);
}

}  // namespace ghz::harness
