#pragma once

#include "parch/common.hpp"

#include <array>
#include <cstdint>
#include <memory>

namespace parch {

/// 32 -> 16 bit tabulation hash: the key is split into its 16-bit halves,
/// each half indexes one shuffled lookup table and the lookups are combined
/// with XOR. Both tables together occupy 256 KiB, small enough to stay
/// cache-resident while the preprocessing hammers the function.
///
/// Each table is a permutation of {0, ..., 65535}: numbers filled in
/// consecutively, then Fisher-Yates shuffled with SplitMix64 so that a seed
/// reproduces the same tables on every platform.
class TabulationHash {
  public:
    static constexpr std::size_t kTableSize = 1u << 16;

    explicit TabulationHash(std::uint64_t seed);

    std::uint16_t operator()(std::uint32_t key) const
    {
        return static_cast<std::uint16_t>(high_[key >> 16] ^ low_[key & 0xFFFFu]);
    }

    std::uint64_t seed() const { return seed_; }
    const std::array<std::uint16_t, kTableSize>& low_table() const { return low_; }
    const std::array<std::uint16_t, kTableSize>& high_table() const { return high_; }

    /// Test-only: both tables map i -> i, so hash(x) = (x >> 16) ^ (x & 0xFFFF).
    static TabulationHash identity_for_tests();
    /// Test-only degenerate tables: every entry equals `value`, so every key
    /// collides. Violates the permutation invariant on purpose.
    static TabulationHash constant_for_tests(std::uint16_t value);

  private:
    struct Unfilled {};
    explicit TabulationHash(Unfilled) {}

    std::array<std::uint16_t, kTableSize> low_{};
    std::array<std::uint16_t, kTableSize> high_{};
    std::uint64_t seed_ = 0;
};

} // namespace parch
