#include "rfim/rng.hpp"

namespace rfim {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t master_seed, std::uint64_t replica, std::uint64_t purpose)
    : key_(splitmix64(splitmix64(splitmix64(master_seed) ^ replica) ^ (purpose + 0x5851f42d4c957f2dULL))) {}

RandomSource RandomSource::child(std::uint64_t purpose) const {
  return RandomSource(splitmix64(key_ ^ splitmix64(purpose + 0x14057b7ef767814fULL)), FromKey{});
}

std::mt19937_64 RandomSource::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace rfim
