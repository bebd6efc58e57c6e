#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace ndl {

// Counter-based randomness: every draw is a pure function of (key, counter),
// so results do not depend on evaluation order or thread count.

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Purpose : std::uint64_t {
  trial = 0x7472,
  vertices = 0x7665,
  coins = 0x636f,
  graph = 0x6772,
  checker = 0x6368,
  spectrum = 0x7370,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    Purpose purpose) noexcept {
  return mix64(mix64(mix64(master) ^ static_cast<std::uint64_t>(purpose)) ^ mix64(~index));
}

constexpr std::uint64_t counter_bits(std::uint64_t key, std::uint64_t counter) noexcept {
  return mix64(key ^ mix64(counter));
}

// Uniform on [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t key, std::uint64_t counter) noexcept {
  return static_cast<double>(counter_bits(key, counter) >> 11) * 0x1.0p-53;
}

// Sequential splitmix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept {
    const std::uint64_t out = mix64(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
  }

 private:
  std::uint64_t state_;
};

// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Moves a uniformly random k-subset of `items` into its first k slots.
template <class T, class Rng>
void partial_shuffle(std::span<T> items, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k && i < items.size(); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, items.size() - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace ndl
