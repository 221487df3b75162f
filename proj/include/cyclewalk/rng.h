#ifndef CYCLEWALK_RNG_H_
#define CYCLEWALK_RNG_H_

#include <cstdint>
#include <random>

namespace cyclewalk {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream `stream` of master seed `seed`. Replicate r of an experiment always
// uses stream_seed(master, r), so results do not depend on which worker ran
// the replicate.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(stream_seed(seed, stream));
}

}  // namespace cyclewalk

#endif  // CYCLEWALK_RNG_H_
