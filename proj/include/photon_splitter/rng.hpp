#pragma once

#include <cstdint>

namespace psplit {

// Counter-split splitmix64 streams. Stream i of a master seed is an
// independent generator obtained by hashing (master, i); trials indexed by
// i therefore produce identical values no matter how they are distributed
// over threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // stream i = hash(master, i)
  static RngStream derive(std::uint64_t master, std::uint64_t index) {
    return RngStream(mix(master + 0x9e3779b97f4a7c15ull * (index + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1), 53 random bits
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Decorrelated sub-seed for a named stage of a larger run.
inline std::uint64_t subseed(std::uint64_t master, std::uint64_t stage) {
  return RngStream::derive(master, stage).next_u64();
}

}  // namespace psplit
