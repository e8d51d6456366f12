#pragma once

#include <cstdint>
#include <random>

namespace rfim {

/// Purpose tags for derived streams.
enum class Stream : std::uint64_t {
  Field = 1,
  Plus = 2,
  Minus = 3,
  Midedge = 4,
  Chain = 5,
  Test = 99,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random stream keyed by (master seed, replica, purpose).
///
/// Derived keys pass through splitmix64 finalisers, so streams differing in
/// any component are unrelated.  Two access patterns are offered: a
/// counter-based uniform(a, b), which lets coupling-from-the-past replay the
/// same update at the same time index, and a sequential engine seeded from
/// the key.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed, std::uint64_t replica = 0,
                        std::uint64_t purpose = 0);

  std::uint64_t key() const { return key_; }
  RandomSource child(std::uint64_t purpose) const;
  RandomSource child(Stream purpose) const { return child(static_cast<std::uint64_t>(purpose)); }

  /// Uniform in (0, 1), a pure function of (key, a, b).
  double uniform(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t h = splitmix64(key_ ^ splitmix64(a * 0x9e3779b97f4a7c15ULL + b));
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine() const;

 private:
  struct FromKey {};
  RandomSource(std::uint64_t key, FromKey) : key_(key) {}
  std::uint64_t key_;
};

}  // namespace rfim
