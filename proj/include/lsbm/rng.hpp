#pragma once

#include "lsbm/normal.hpp"

#include <cstdint>

namespace lsbm {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Combine a seed with a stream tag or index into a fresh 64-bit key.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

/// Counter-based random stream: word(i) depends only on (key, i), so any
/// evaluation order, including parallel, reproduces the same values.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t tag = 0)
        : key_(mix_seed(seed, tag)) {}

    std::uint64_t word(std::uint64_t i) const {
        return splitmix64(key_ + i * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double strictly inside (0, 1), from the top 53 bits.
    double uniform(std::uint64_t i) const {
        return (static_cast<double>(word(i) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal by inverse-cdf transform; one word per draw.
    double gaussian(std::uint64_t i) const { return normal_quantile(uniform(i)); }

  private:
    std::uint64_t key_;
};

}  // namespace lsbm
