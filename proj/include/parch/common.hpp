#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parch {

using NodeId = std::uint32_t;
using Weight = std::uint64_t;

inline constexpr NodeId kInvalidNode = 0xFFFFFFFFu;
inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::max();

/// Input file could not be parsed; carries the offending 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Fixed-capacity storage ran out of cells. The preprocessing search limits
/// keep load factors far below capacity, so hitting this means a bug or abuse.
class StorageFullError : public std::runtime_error {
  public:
    StorageFullError() : std::runtime_error("hash storage full: all 32768 cells live") {}
};

/// An iteration selected no node although the graph is not fully contracted.
/// Raised instead of spinning forever when the tie-breaker is not consistent.
class InconsistentTieBreakerError : public std::runtime_error {
  public:
    explicit InconsistentTieBreakerError(std::size_t remaining)
        : std::runtime_error("empty independent set with " + std::to_string(remaining) +
                             " nodes remaining; tie-breaker is not consistent")
    {
    }
};

// SplitMix64 (Steele, Lea, Flood 2014). Fixed generator so that every derived
// artifact (shuffled tables, bias arrays, synthetic graphs) is bit-identical
// across platforms and standard libraries.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t bound)
    {
        using u128 = unsigned __int128;
        return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Independent seed stream for a named sub-component of a run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag)
{
    SplitMix64 rng(seed ^ (0xA3C59AC2F1E38B7Bull * (tag + 1)));
    return rng.next();
}

// In-place Fisher-Yates driven by SplitMix64; std::shuffle is implementation
// defined and would break cross-platform determinism.
template <typename T, std::size_t N>
void deterministic_shuffle(std::array<T, N>& values, SplitMix64& rng)
{
    for (std::size_t i = N - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(values[i], values[j]);
    }
}

template <typename T>
void deterministic_shuffle(std::vector<T>& values, SplitMix64& rng)
{
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

/// Seeded 4-round Feistel permutation of the 32-bit key space. Distinct inputs
/// map to distinct outputs, which gives arbitrarily many distinct pseudo-random
/// keys without a dedup pass.
class Feistel32 {
  public:
    explicit Feistel32(std::uint64_t seed)
    {
        SplitMix64 rng(seed);
        for (auto& k : round_keys_)
            k = static_cast<std::uint32_t>(rng.next());
    }

    std::uint32_t operator()(std::uint32_t x) const
    {
        std::uint16_t left = static_cast<std::uint16_t>(x >> 16);
        std::uint16_t right = static_cast<std::uint16_t>(x);
        for (std::uint32_t key : round_keys_) {
            std::uint32_t f = (static_cast<std::uint32_t>(right) + key) * 2654435761u;
            f ^= f >> 13;
            std::uint16_t next_left = right;
            right = static_cast<std::uint16_t>(left ^ static_cast<std::uint16_t>(f));
            left = next_left;
        }
        return (static_cast<std::uint32_t>(left) << 16) | right;
    }

  private:
    std::array<std::uint32_t, 4> round_keys_{};
};

} // namespace parch
