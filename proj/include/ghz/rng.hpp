#ifndef GHZ_RNG_HPP_
#define GHZ_RNG_HPP_

// Seed derivation. Every trial gets independent streams keyed by
// (session seed, trial index, purpose), so a trial's randomness does not
// depend on how many draws earlier trials consumed or on message arrival
// order in distributed mode.

#include <cstdint>
#include <random>

#include "ghz/game.hpp"

namespace ghz::harness {

using Engine = std::mt19937_64;

enum class StreamPurpose : std::uint64_t {
  kGuardChoice = 0x6775617264ULL,
  kDevice = 0x646576696365ULL,
};

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

Engine trial_stream(std::uint64_t seed, std::uint64_t trial,
                    StreamPurpose purpose);

// 53-bit uniform double in [0,1).
double uniform01(Engine& engine);

// Exactly uniform over guards 1..4 (top two bits of one draw).
game::GuardId uniform_guard(Engine& engine);

}  // namespace ghz::harness

#endif  // GHZ_RNG_HPP_
