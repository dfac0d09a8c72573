#pragma once

#include "parch/common.hpp"
#include "parch/tabulation.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace parch {

/// Fixed-capacity key/value map addressed by tabulation hash with linear
/// probing. One instance backs one worker's priority queue, so there is no
/// sharing and no deletion; the whole table is wiped between witness searches
/// by bumping a timestamp, which makes clear() constant time.
///
/// Capacity is 2^15 cells, half the hash range. The searches it serves touch
/// at most a few thousand keys, so the load factor stays in the low percent
/// range and probe chains are short.
class HashStorage {
  public:
    static constexpr std::uint32_t kCapacity = 1u << 15;
    static constexpr std::uint32_t kSlotMask = kCapacity - 1;

    struct Cell {
        std::uint32_t key;
        std::uint32_t value;
        std::uint32_t stamp;
    };
    static_assert(sizeof(Cell) == 12, "cell layout must stay at 12 bytes");

    explicit HashStorage(const TabulationHash& hash)
        : hash_(&hash), cells_(kCapacity, Cell{0, 0, 0})
    {
    }

    std::uint32_t slot_of(std::uint32_t key) const { return (*hash_)(key) & kSlotMask; }

    void put(std::uint32_t key, std::uint32_t value)
    {
        std::uint32_t slot = slot_of(key);
        for (std::uint32_t probes = 0; probes < kCapacity; ++probes) {
            Cell& cell = cells_[slot];
            if (cell.stamp != current_stamp_) {
                cell = Cell{key, value, current_stamp_};
                ++live_count_;
                return;
            }
            if (cell.key == key) {
                cell.value = value;
                return;
            }
            slot = (slot + 1) & kSlotMask;
        }
        throw StorageFullError();
    }

    std::optional<std::uint32_t> get(std::uint32_t key) const
    {
        std::uint32_t slot = slot_of(key);
        for (std::uint32_t probes = 0; probes < kCapacity; ++probes) {
            const Cell& cell = cells_[slot];
            if (cell.stamp != current_stamp_)
                return std::nullopt;
            if (cell.key == key)
                return cell.value;
            slot = (slot + 1) & kSlotMask;
        }
        return std::nullopt;
    }

    /// Constant time: bumps the timestamp so every cell turns dead. Only on
    /// stamp wrap-around (once per 2^32 clears) the stamps are swept to zero.
    void clear()
    {
        if (current_stamp_ == std::numeric_limits<std::uint32_t>::max()) {
            for (Cell& cell : cells_)
                cell.stamp = 0;
            current_stamp_ = 1;
        } else {
            ++current_stamp_;
        }
        live_count_ = 0;
    }

    std::uint32_t live_count() const { return live_count_; }
    std::uint32_t current_stamp() const { return current_stamp_; }

    /// Bytes of the cell array, the per-core footprint this structure adds.
    static constexpr std::size_t backing_bytes() { return kCapacity * sizeof(Cell); }
    static_assert(kCapacity * sizeof(Cell) == 393216);

    /// Raw view for tests that check clear() rewrites no cell memory.
    std::span<const Cell> cells() const { return cells_; }

    /// Test-only: force the stamp close to the wrap point.
    void set_stamp_for_tests(std::uint32_t stamp) { current_stamp_ = stamp; }

  private:
    const TabulationHash* hash_;
    std::vector<Cell> cells_;
    std::uint32_t current_stamp_ = 1; // cells are zero-stamped, so the table starts empty
    std::uint32_t live_count_ = 0;
};

} // namespace parch
