#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wfd {

/// Identifies the generator and the substream derivation rule. Any change
/// to either must bump the version suffix, since it changes every sample.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64/splitmix64-derive/v1";

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `index` of `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// A deterministic random stream identified by (root, index). Streams form
/// a tree: fork(k) yields a child stream whose identity depends only on this
/// stream's identity and k, never on how many values were drawn.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t root, std::uint64_t index = 0)
      : root_(root), index_(index), seed_(derive_seed(root, index)), engine_(seed_) {}

  std::uint64_t root() const { return root_; }
  std::uint64_t index() const { return index_; }
  std::uint64_t seed() const { return seed_; }

  SeedStream fork(std::uint64_t child) const { return SeedStream(seed_, child); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) from the top 53 bits; bit-exact on every
  /// conforming platform.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] (inclusive), by rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::uint64_t root_;
  std::uint64_t index_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace wfd
