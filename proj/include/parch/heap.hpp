#pragma once

#include "parch/common.hpp"
#include "parch/hash_storage.hpp"

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace parch {

/// Maps node id -> slot in the heap's entry list. Backends: DenseStore (one
/// word per graph node) and HashStorage (constant 384 KiB per queue).
template <typename S>
concept IndexStoreLike = requires(S s, const S cs, std::uint32_t k, std::uint32_t v) {
    { s.put(k, v) };
    { cs.get(k) } -> std::convertible_to<std::optional<std::uint32_t>>;
    { s.clear() };
    { cs.backing_bytes() } -> std::convertible_to<std::size_t>;
};

/// Array-backed index store with generation stamps, so clearing between
/// witness searches is constant time here as well and the backend comparison
/// measures lookup cost, not reset cost.
class DenseStore {
  public:
    explicit DenseStore(std::uint32_t node_count)
        : values_(node_count, 0), stamps_(node_count, 0)
    {
    }

    void put(std::uint32_t key, std::uint32_t value)
    {
        values_[key] = value;
        stamps_[key] = current_stamp_;
    }

    std::optional<std::uint32_t> get(std::uint32_t key) const
    {
        if (stamps_[key] != current_stamp_)
            return std::nullopt;
        return values_[key];
    }

    void clear()
    {
        if (current_stamp_ == std::numeric_limits<std::uint32_t>::max()) {
            std::fill(stamps_.begin(), stamps_.end(), 0u);
            current_stamp_ = 1;
        } else {
            ++current_stamp_;
        }
    }

    std::size_t backing_bytes() const
    {
        return values_.size() * sizeof(std::uint32_t) + stamps_.size() * sizeof(std::uint32_t);
    }

  private:
    std::vector<std::uint32_t> values_;
    std::vector<std::uint32_t> stamps_;
    std::uint32_t current_stamp_ = 1;
};

static_assert(IndexStoreLike<DenseStore>);
static_assert(IndexStoreLike<HashStorage>);

/// Binary min-heap with decrease-key for Dijkstra searches. Every node pushed
/// since the last reset keeps a record in `entries_`; the index store maps the
/// node id to that record, which is stable across sifts. Settled nodes stay in
/// `entries_` with their final distance, so the search can read them back
/// without any per-node array.
template <IndexStoreLike Store>
class MinHeap {
  public:
    explicit MinHeap(Store store) : store_(std::move(store)) {}

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    std::size_t touched() const { return entries_.size(); }

    Weight min_key() const
    {
        assert(!heap_.empty());
        return entries_[heap_.front()].dist;
    }

    /// Inserts the node or lowers its key. Returns true when the stored
    /// distance changed (insert or decrease); pushes with a key >= the known
    /// distance are no-ops.
    bool push_or_decrease(NodeId node, Weight dist)
    {
        if (auto slot = store_.get(node)) {
            Entry& e = entries_[*slot];
            if (e.heap_pos == kPopped) {
                assert(dist >= e.dist); // settled keys are final under nonnegative weights
                return false;
            }
            if (dist >= e.dist)
                return false;
            e.dist = dist;
            sift_up(e.heap_pos);
            return true;
        }
        std::uint32_t slot = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back(Entry{node, dist, static_cast<std::uint32_t>(heap_.size())});
        heap_.push_back(slot);
        store_.put(node, slot);
        sift_up(static_cast<std::uint32_t>(heap_.size()) - 1);
        return true;
    }

    std::optional<std::pair<NodeId, Weight>> pop_min()
    {
        if (heap_.empty())
            return std::nullopt;
        std::uint32_t slot = heap_.front();
        Entry& top = entries_[slot];
        top.heap_pos = kPopped;
        heap_.front() = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            entries_[heap_.front()].heap_pos = 0;
            sift_down(0);
        }
        return std::make_pair(top.node, top.dist);
    }

    /// Final distance of a node that has been popped; nullopt while the node
    /// is still queued or was never seen.
    std::optional<Weight> settled_distance(NodeId node) const
    {
        if (auto slot = store_.get(node)) {
            const Entry& e = entries_[*slot];
            if (e.heap_pos == kPopped)
                return e.dist;
        }
        return std::nullopt;
    }

    /// Best distance known so far, tentative or final.
    std::optional<Weight> current_distance(NodeId node) const
    {
        if (auto slot = store_.get(node))
            return entries_[*slot].dist;
        return std::nullopt;
    }

    /// Empties the queue and forgets all touched nodes in constant time.
    void reset()
    {
        entries_.clear();
        heap_.clear();
        store_.clear();
    }

    const Store& store() const { return store_; }

    /// Debug walk: heap order, position bookkeeping and store agreement.
    bool check_invariants() const
    {
        for (std::uint32_t i = 0; i < heap_.size(); ++i) {
            const Entry& e = entries_[heap_[i]];
            if (e.heap_pos != i)
                return false;
            if (i > 0 && entries_[heap_[(i - 1) / 2]].dist > e.dist)
                return false;
        }
        for (std::uint32_t slot = 0; slot < entries_.size(); ++slot) {
            auto stored = store_.get(entries_[slot].node);
            if (!stored || *stored != slot)
                return false;
        }
        return true;
    }

  private:
    static constexpr std::uint32_t kPopped = 0xFFFFFFFFu;

    struct Entry {
        NodeId node;
        Weight dist;
        std::uint32_t heap_pos;
    };

    void sift_up(std::uint32_t pos)
    {
        std::uint32_t slot = heap_[pos];
        Weight dist = entries_[slot].dist;
        while (pos > 0) {
            std::uint32_t parent = (pos - 1) / 2;
            if (entries_[heap_[parent]].dist <= dist)
                break;
            heap_[pos] = heap_[parent];
            entries_[heap_[pos]].heap_pos = pos;
            pos = parent;
        }
        heap_[pos] = slot;
        entries_[slot].heap_pos = pos;
    }

    void sift_down(std::uint32_t pos)
    {
        std::uint32_t slot = heap_[pos];
        Weight dist = entries_[slot].dist;
        std::uint32_t size = static_cast<std::uint32_t>(heap_.size());
        while (true) {
            std::uint32_t child = 2 * pos + 1;
            if (child >= size)
                break;
            if (child + 1 < size && entries_[heap_[child + 1]].dist < entries_[heap_[child]].dist)
                ++child;
            if (entries_[heap_[child]].dist >= dist)
                break;
            heap_[pos] = heap_[child];
            entries_[heap_[pos]].heap_pos = pos;
            pos = child;
        }
        heap_[pos] = slot;
        entries_[slot].heap_pos = pos;
    }

    std::vector<Entry> entries_; // every node touched since reset, append-only
    std::vector<std::uint32_t> heap_; // indices into entries_, heap-ordered
    Store store_;
};

enum class QueueStoreKind { Array, XorHash };

inline std::string to_string(QueueStoreKind k)
{
    return k == QueueStoreKind::Array ? "array" : "xorhash";
}

} // namespace parch
