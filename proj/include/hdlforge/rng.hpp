#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hdlforge {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a over a byte string; used to turn kind tags into mixing keys.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded random stream (xoshiro256**).
///
/// All draws are defined in terms of raw 64-bit words, so sequences are
/// identical across compilers and standard libraries. The std distribution
/// classes are deliberately not used since their output is
/// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_range(std::int64_t lo, std::int64_t hi);

  bool coin() noexcept { return (next_u64() >> 63) != 0; }

  /// Index drawn with probability proportional to the integer weights.
  std::size_t weighted(std::span<const std::uint32_t> weights);

  template <typename T>
  void shuffle(std::vector<T>& v)
  {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  template <typename T>
  const T& pick(const std::vector<T>& v)
  {
    return v[static_cast<std::size_t>(uniform(v.size()))];
  }

private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
};

/// Independent per-sample stream keyed by (master seed, kind tag, index).
///
/// For a fixed (master, kind) the map index -> stream seed is a bijection,
/// so two indices never share a stream.
std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view kind, std::uint64_t index) noexcept;

inline Rng split_stream(std::uint64_t master_seed, std::string_view kind, std::uint64_t index) noexcept
{
  return Rng(stream_seed(master_seed, kind, index));
}

} // namespace hdlforge
