#pragma once

#include "parch/common.hpp"
#include "parch/graph.hpp"
#include "parch/heap.hpp"
#include "parch/tie_break.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace parch {

/// Per-node contraction priority. `composite()` is the scalar the engine
/// orders by; the coefficients are tunable, the defaults follow common CH
/// practice (edge difference dominates).
struct PriorityWeights {
    std::int64_t edge_difference = 4;
    std::int64_t deleted_neighbors = 1;
    std::int64_t originals = 1;
};

struct NodePriority {
    std::int32_t edge_difference = 0;   // shortcut entries added minus edge entries removed
    std::uint32_t deleted_neighbors = 0; // distinct already-contracted neighbors
    std::uint32_t originals = 0;         // original edges the new shortcuts would stand for

    std::int64_t composite(const PriorityWeights& w) const
    {
        return w.edge_difference * edge_difference +
               w.deleted_neighbors * static_cast<std::int64_t>(deleted_neighbors) +
               w.originals * static_cast<std::int64_t>(originals);
    }

    bool operator==(const NodePriority&) const = default;
};

/// One shortcut to be inserted: arc from->to when `forward`, arc to->from
/// when `backward` (both for a merged bidirectional pair of equal weight).
struct ShortcutRecord {
    NodeId from = kInvalidNode;
    NodeId to = kInvalidNode;
    Weight weight = kUnreachable;
    NodeId middle = kInvalidNode;
    bool forward = false;
    bool backward = false;
    std::uint32_t originals = 0;

    bool operator==(const ShortcutRecord&) const = default;
};

struct CHResult {
    std::uint32_t node_count = 0;
    std::vector<std::uint32_t> rank;        // contraction position per node, a permutation
    std::vector<ShortcutRecord> shortcuts;  // in application order
    std::uint32_t iteration_count = 0;
    std::size_t queue_bytes_per_core = 0;   // index-store footprint of one worker queue

    bool operator==(const CHResult&) const = default;
};

struct PreprocessOptions {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    TieBreakerKind tie_breaker = TieBreakerKind::Xor;
    QueueStoreKind queue_store = QueueStoreKind::XorHash;
    std::uint64_t sim_limit = 1000;      // settled-node cap for priority simulation
    std::uint64_t contract_limit = 2000; // settled-node cap for actual contraction
    PriorityWeights priority_weights;

    /// Test hooks, run serially. The first sees the iteration's independent
    /// set before any mutation; the second sees the graph after the merge.
    std::function<void(const ContractionGraph&, const std::vector<NodeId>&)> on_set_selected;
    std::function<void(const ContractionGraph&)> on_iteration_end;
};

/// Bounded Dijkstra from `source` over the non-contracted overlay that never
/// expands `excluded`. Stops when every target settled, when the smallest
/// queue key exceeds `upper_bound`, or after `node_limit` settled nodes.
/// Writes the settled distance per target into `out_dists` (kUnreachable for
/// targets it did not settle, a safe overestimate). `targets` must be sorted.
template <IndexStoreLike Store>
void witness_search(const ContractionGraph& g, NodeId source, NodeId excluded,
                    std::span<const NodeId> targets, Weight upper_bound,
                    std::uint64_t node_limit, MinHeap<Store>& queue,
                    std::span<Weight> out_dists)
{
    assert(source != excluded);
    assert(std::is_sorted(targets.begin(), targets.end()));
    assert(out_dists.size() == targets.size());
    std::fill(out_dists.begin(), out_dists.end(), kUnreachable);

    queue.reset();
    queue.push_or_decrease(source, 0);
    std::uint64_t settled = 0;
    std::size_t targets_found = 0;

    while (!queue.empty()) {
        if (queue.min_key() > upper_bound)
            break;
        auto [u, dist] = *queue.pop_min();
        ++settled;

        auto it = std::lower_bound(targets.begin(), targets.end(), u);
        if (it != targets.end() && *it == u) {
            out_dists[static_cast<std::size_t>(it - targets.begin())] = dist;
            if (++targets_found == targets.size())
                break;
        }
        if (settled >= node_limit)
            break;

        for (const OverlayEdge& e : g.edges(u)) {
            if (!e.forward || e.target == excluded || g.contracted(e.target))
                continue;
            queue.push_or_decrease(e.target, dist + e.weight);
        }
    }
}

namespace detail {

struct NeighborInfo {
    NodeId id = kInvalidNode;
    Weight in_weight = kUnreachable;  // min weight over arcs id -> v
    Weight out_weight = kUnreachable; // min weight over arcs v -> id
    std::uint32_t in_originals = 0;
    std::uint32_t out_originals = 0;
};

struct PlannedPair {
    NodeId from;
    NodeId to;
    Weight weight;
    std::uint32_t originals;
};

struct PairScratch {
    std::vector<NeighborInfo> neighbors;
    std::vector<NodeId> contracted_ids;
    std::vector<NodeId> targets;
    std::vector<Weight> target_dists;
    std::vector<PlannedPair> pairs;
    std::uint32_t removed_records = 0;    // overlay entries at v with a live endpoint
    std::uint32_t contracted_distinct = 0;
};

/// Gathers the distinct non-contracted neighbors of v with per-direction
/// minimum weights, plus the bookkeeping counts the priority terms need.
void collect_neighbors(const ContractionGraph& g, NodeId v, PairScratch& s);

/// Enumerates all in/out neighbor pairs of v and records those whose
/// two-edge path through v has no witness. Shared by priority simulation
/// (node_limit 1000) and actual contraction (node_limit 2000).
template <IndexStoreLike Store>
void plan_pairs(const ContractionGraph& g, NodeId v, std::uint64_t node_limit,
                MinHeap<Store>& queue, PairScratch& s)
{
    collect_neighbors(g, v, s);
    s.pairs.clear();

    for (const NeighborInfo& u : s.neighbors) {
        if (u.in_weight == kUnreachable)
            continue;
        s.targets.clear();
        Weight max_out = 0;
        for (const NeighborInfo& w : s.neighbors) {
            if (w.out_weight == kUnreachable || w.id == u.id)
                continue;
            s.targets.push_back(w.id); // neighbors are sorted by id
            max_out = std::max(max_out, w.out_weight);
        }
        if (s.targets.empty())
            continue;

        s.target_dists.resize(s.targets.size());
        witness_search(g, u.id, v, s.targets, u.in_weight + max_out, node_limit, queue,
                       std::span<Weight>(s.target_dists));

        std::size_t slot = 0;
        for (const NeighborInfo& w : s.neighbors) {
            if (w.out_weight == kUnreachable || w.id == u.id)
                continue;
            Weight path = u.in_weight + w.out_weight;
            if (s.target_dists[slot] > path)
                s.pairs.push_back(
                    PlannedPair{u.id, w.id, path, u.in_originals + w.out_originals});
            ++slot;
        }
    }
}

/// Turns needed ordered pairs into shortcut records; opposite pairs of equal
/// weight merge into one bidirectional record.
void merge_pairs(std::vector<PlannedPair>& pairs, NodeId middle,
                 std::vector<ShortcutRecord>& out);

} // namespace detail

/// Priority simulation: plans the contraction of v without mutating the graph
/// and summarizes it as a NodePriority.
template <IndexStoreLike Store>
NodePriority simulate(const ContractionGraph& g, NodeId v, std::uint64_t node_limit,
                      MinHeap<Store>& queue, detail::PairScratch& scratch,
                      std::vector<ShortcutRecord>& records)
{
    assert(!g.contracted(v));
    detail::plan_pairs(g, v, node_limit, queue, scratch);
    records.clear();
    detail::merge_pairs(scratch.pairs, v, records);

    NodePriority p;
    std::uint32_t added = static_cast<std::uint32_t>(records.size());
    p.edge_difference = static_cast<std::int32_t>(added) -
                        static_cast<std::int32_t>(scratch.removed_records);
    p.deleted_neighbors = scratch.contracted_distinct;
    for (const ShortcutRecord& r : records)
        p.originals += r.originals;
    return p;
}

template <IndexStoreLike Store>
NodePriority simulate(const ContractionGraph& g, NodeId v, std::uint64_t node_limit,
                      MinHeap<Store>& queue)
{
    detail::PairScratch scratch;
    std::vector<ShortcutRecord> records;
    return simulate(g, v, node_limit, queue, scratch, records);
}

/// Contracts v: inserts the planned shortcuts and marks v contracted.
/// Returns the inserted records.
template <IndexStoreLike Store>
std::vector<ShortcutRecord> contract(ContractionGraph& g, NodeId v, std::uint64_t node_limit,
                                     MinHeap<Store>& queue)
{
    assert(!g.contracted(v));
    detail::PairScratch scratch;
    detail::plan_pairs(g, v, node_limit, queue, scratch);
    std::vector<ShortcutRecord> records;
    detail::merge_pairs(scratch.pairs, v, records);
    for (const ShortcutRecord& r : records)
        g.insert_shortcut(r.from, r.to, r.weight, r.middle, r.forward, r.backward, r.originals);
    g.mark_contracted(v);
    return records;
}

/// True when v is strictly smallest by (priority, tie-break) within its
/// 2-hop neighborhood of non-contracted nodes.
template <TieBreakerLike TB>
bool locally_minimal(const ContractionGraph& g, std::span<const std::int64_t> priority,
                     const TB& tb, NodeId v)
{
    auto wins_against = [&](NodeId other) {
        return priority[v] < priority[other] ||
               (priority[v] == priority[other] && tb.precedes(v, other));
    };
    for (const OverlayEdge& e1 : g.edges(v)) {
        NodeId u1 = e1.target;
        if (g.contracted(u1))
            continue;
        if (u1 != v && !wins_against(u1))
            return false;
        for (const OverlayEdge& e2 : g.edges(u1)) {
            NodeId u2 = e2.target;
            if (u2 == v || g.contracted(u2))
                continue;
            if (!wins_against(u2))
                return false;
        }
    }
    return true;
}

/// All non-contracted nodes that are 2-hop local minima of (priority, ≺).
/// With a consistent tie-breaker this is nonempty whenever the remaining
/// graph is; selected nodes are pairwise more than 2 hops apart.
template <TieBreakerLike TB>
std::vector<NodeId> select_independent_set(const ContractionGraph& g,
                                           std::span<const std::int64_t> priority, const TB& tb)
{
    std::vector<NodeId> set;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (g.contracted(v))
            continue;
        if (locally_minimal(g, priority, tb, v))
            set.push_back(v);
    }
    return set;
}

/// Full parallel preprocessing: iterates priority refresh, independent-set
/// selection, snapshot-planned contraction and neighbor invalidation until
/// every node has a rank. The result only depends on the graph, the seed and
/// the configuration, never on the thread count.
CHResult run_preprocessing(const InputGraph& g, const PreprocessOptions& options);

} // namespace parch
