#include "hdlforge/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace hdlforge {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
{
  return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) noexcept : seed_(seed)
{
  std::uint64_t x = seed;
  for (auto& word : s_) {
    x += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(x);
  }
}

std::uint64_t Rng::next_u64() noexcept
{
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::uniform(std::uint64_t bound)
{
  if (bound == 0) {
    throw std::invalid_argument("Rng::uniform: bound must be positive");
  }
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::uniform_range(std::int64_t lo, std::int64_t hi)
{
  if (hi < lo) {
    throw std::invalid_argument("Rng::uniform_range: empty range");
  }
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(uniform(span));
}

std::size_t Rng::weighted(std::span<const std::uint32_t> weights)
{
  const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
  if (total == 0) {
    throw std::invalid_argument("Rng::weighted: all weights are zero");
  }
  std::uint64_t r = uniform(total);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (r < weights[i]) {
      return i;
    }
    r -= weights[i];
  }
  return weights.size() - 1;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::string_view kind, std::uint64_t index) noexcept
{
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ fnv1a64(kind));
  return splitmix64(h ^ index);
}

} // namespace hdlforge
