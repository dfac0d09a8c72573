#include "parch/contraction.hpp"

#include "parch/thread_pool.hpp"

#include <atomic>
#include <tuple>
#include <type_traits>

namespace parch {

namespace detail {

void collect_neighbors(const ContractionGraph& g, NodeId v, PairScratch& s)
{
    s.neighbors.clear();
    s.contracted_ids.clear();
    s.removed_records = 0;

    for (const OverlayEdge& e : g.edges(v)) {
        if (g.contracted(e.target)) {
            s.contracted_ids.push_back(e.target);
            continue;
        }
        ++s.removed_records;
        NeighborInfo info;
        info.id = e.target;
        if (e.forward) {
            info.out_weight = e.weight;
            info.out_originals = e.originals;
        }
        if (e.backward) {
            info.in_weight = e.weight;
            info.in_originals = e.originals;
        }
        s.neighbors.push_back(info);
    }

    std::sort(s.neighbors.begin(), s.neighbors.end(),
              [](const NeighborInfo& a, const NeighborInfo& b) { return a.id < b.id; });
    // merge parallel entries per neighbor, keeping the per-direction minimum
    std::size_t out = 0;
    for (std::size_t i = 0; i < s.neighbors.size(); ++i) {
        if (out > 0 && s.neighbors[out - 1].id == s.neighbors[i].id) {
            NeighborInfo& dst = s.neighbors[out - 1];
            const NeighborInfo& src = s.neighbors[i];
            if (src.in_weight < dst.in_weight) {
                dst.in_weight = src.in_weight;
                dst.in_originals = src.in_originals;
            }
            if (src.out_weight < dst.out_weight) {
                dst.out_weight = src.out_weight;
                dst.out_originals = src.out_originals;
            }
        } else {
            s.neighbors[out++] = s.neighbors[i];
        }
    }
    s.neighbors.resize(out);

    std::sort(s.contracted_ids.begin(), s.contracted_ids.end());
    s.contracted_distinct = static_cast<std::uint32_t>(
        std::unique(s.contracted_ids.begin(), s.contracted_ids.end()) -
        s.contracted_ids.begin());
}

void merge_pairs(std::vector<PlannedPair>& pairs, NodeId middle,
                 std::vector<ShortcutRecord>& out)
{
    auto key = [](const PlannedPair& p) {
        NodeId lo = std::min(p.from, p.to);
        NodeId hi = std::max(p.from, p.to);
        return std::tuple(lo, hi, p.from);
    };
    std::sort(pairs.begin(), pairs.end(),
              [&](const PlannedPair& a, const PlannedPair& b) { return key(a) < key(b); });

    for (std::size_t i = 0; i < pairs.size();) {
        const PlannedPair& p = pairs[i];
        bool has_partner = i + 1 < pairs.size() &&
                           std::min(p.from, p.to) == std::min(pairs[i + 1].from, pairs[i + 1].to) &&
                           std::max(p.from, p.to) == std::max(pairs[i + 1].from, pairs[i + 1].to);
        if (has_partner && pairs[i + 1].weight == p.weight) {
            // both directions at equal cost: one bidirectional record
            out.push_back(ShortcutRecord{std::min(p.from, p.to), std::max(p.from, p.to), p.weight,
                                         middle, true, true,
                                         std::max(p.originals, pairs[i + 1].originals)});
            i += 2;
        } else {
            out.push_back(ShortcutRecord{p.from, p.to, p.weight, middle, true, false, p.originals});
            ++i;
        }
    }
}

} // namespace detail

namespace {

/// Bulk-synchronous contraction driver. Read-only parallel phases (priority
/// simulation, selection, shortcut planning) alternate with a serial merge
/// that mutates the overlay; per-worker queues and scratch are never shared.
template <TieBreakerLike TB, IndexStoreLike Store>
class Contractor {
  public:
    Contractor(const InputGraph& input, const PreprocessOptions& options, TB tie_breaker,
               const TabulationHash* storage_tables)
        : options_(options), graph_(build_contraction_graph(input)), tie_breaker_(std::move(tie_breaker)),
          storage_tables_(storage_tables), pool_(options.threads)
    {
        for (unsigned i = 0; i < pool_.size(); ++i)
            workers_.emplace_back(make_store(input.node_count));
    }

    CHResult run()
    {
        const std::uint32_t n = graph_.node_count();
        CHResult result;
        result.node_count = n;
        result.rank.assign(n, kInvalidNode);
        result.queue_bytes_per_core = workers_.empty()
                                          ? 0
                                          : workers_.front().queue.store().backing_bytes();

        priority_.assign(n, 0);
        dirty_.assign(n, 1);

        std::vector<NodeId> active(n);
        for (NodeId v = 0; v < n; ++v)
            active[v] = v;

        std::vector<NodeId> dirty_list;
        std::vector<NodeId> set;
        std::vector<std::uint8_t> selected;
        std::vector<std::vector<ShortcutRecord>> planned;
        std::uint32_t next_rank = 0;

        while (graph_.remaining() > 0) {
            // (a) refresh priorities of nodes whose neighborhood changed
            dirty_list.clear();
            for (NodeId v : active)
                if (dirty_[v])
                    dirty_list.push_back(v);
            parallel_over(dirty_list.size(), [&](Worker& w, std::size_t i) {
                NodeId v = dirty_list[i];
                priority_[v] =
                    simulate(graph_, v, options_.sim_limit, w.queue, w.scratch, w.records)
                        .composite(options_.priority_weights);
            });
            for (NodeId v : dirty_list)
                dirty_[v] = 0;

            // (b) select the 2-hop independent set of local minima
            selected.assign(active.size(), 0);
            parallel_over(active.size(), [&](Worker&, std::size_t i) {
                selected[i] = locally_minimal(graph_, std::span<const std::int64_t>(priority_),
                                              tie_breaker_, active[i]);
            });
            set.clear();
            for (std::size_t i = 0; i < active.size(); ++i)
                if (selected[i])
                    set.push_back(active[i]);
            if (set.empty())
                throw InconsistentTieBreakerError(graph_.remaining());
            if (options_.on_set_selected)
                options_.on_set_selected(graph_, set);

            // ranks within the set ascend by (priority, tie-break)
            std::sort(set.begin(), set.end(), [&](NodeId a, NodeId b) {
                if (priority_[a] != priority_[b])
                    return priority_[a] < priority_[b];
                return tie_breaker_.precedes(a, b);
            });

            // (c) plan all contractions against the iteration-start graph,
            // then merge serially in rank order
            planned.assign(set.size(), {});
            parallel_over(set.size(), [&](Worker& w, std::size_t i) {
                detail::plan_pairs(graph_, set[i], options_.contract_limit, w.queue, w.scratch);
                detail::merge_pairs(w.scratch.pairs, set[i], planned[i]);
            });
            for (std::size_t i = 0; i < set.size(); ++i) {
                NodeId v = set[i];
                for (const ShortcutRecord& r : planned[i]) {
                    graph_.insert_shortcut(r.from, r.to, r.weight, r.middle, r.forward,
                                           r.backward, r.originals);
                    result.shortcuts.push_back(r);
                }
                graph_.mark_contracted(v);
                result.rank[v] = next_rank++;
            }

            // (d) invalidate the survivors next to a contracted node
            for (NodeId v : set)
                for (const OverlayEdge& e : graph_.edges(v))
                    if (!graph_.contracted(e.target))
                        dirty_[e.target] = 1;

            std::erase_if(active, [&](NodeId v) { return graph_.contracted(v); });
            ++result.iteration_count;
            if (options_.on_iteration_end)
                options_.on_iteration_end(graph_);
        }
        return result;
    }

  private:
    struct Worker {
        explicit Worker(Store store) : queue(std::move(store)) {}
        MinHeap<Store> queue;
        detail::PairScratch scratch;
        std::vector<ShortcutRecord> records;
    };

    Store make_store(std::uint32_t node_count)
    {
        if constexpr (std::is_same_v<Store, HashStorage>)
            return HashStorage(*storage_tables_);
        else
            return DenseStore(node_count);
    }

    /// Runs fn(worker, i) for i in [0, count) across the pool. Work items
    /// write only to their own slot, so the schedule cannot influence the
    /// outcome.
    template <typename F>
    void parallel_over(std::size_t count, F&& fn)
    {
        if (count == 0)
            return;
        constexpr std::size_t kChunk = 16;
        std::atomic<std::size_t> cursor{0};
        pool_.run([&](unsigned worker) {
            Worker& w = workers_[worker];
            while (true) {
                std::size_t begin = cursor.fetch_add(kChunk, std::memory_order_relaxed);
                if (begin >= count)
                    break;
                std::size_t end = std::min(begin + kChunk, count);
                for (std::size_t i = begin; i < end; ++i)
                    fn(w, i);
            }
        });
    }

    PreprocessOptions options_;
    ContractionGraph graph_;
    TB tie_breaker_;
    const TabulationHash* storage_tables_;
    ThreadPool pool_;
    std::vector<Worker> workers_;
    std::vector<std::int64_t> priority_;
    std::vector<std::uint8_t> dirty_;
};

// Seed-stream tags for the independent random components of a run.
constexpr std::uint64_t kSeedTagTieBreak = 1;
constexpr std::uint64_t kSeedTagStorage = 2;

template <TieBreakerLike TB>
CHResult run_with_tie_breaker(const InputGraph& g, const PreprocessOptions& options, TB tb)
{
    if (options.queue_store == QueueStoreKind::XorHash) {
        TabulationHash storage_tables(derive_seed(options.seed, kSeedTagStorage));
        return Contractor<TB, HashStorage>(g, options, std::move(tb), &storage_tables).run();
    }
    return Contractor<TB, DenseStore>(g, options, std::move(tb), nullptr).run();
}

} // namespace

CHResult run_preprocessing(const InputGraph& g, const PreprocessOptions& options)
{
    if (options.threads < 1)
        throw std::invalid_argument("thread count must be at least 1");
    if (g.node_count == 0)
        return CHResult{};
    switch (options.tie_breaker) {
    case TieBreakerKind::Bias:
        return run_with_tie_breaker(
            g, options, BiasTieBreaker(g.node_count, derive_seed(options.seed, kSeedTagTieBreak)));
    case TieBreakerKind::Xor:
        return run_with_tie_breaker(
            g, options,
            XorTieBreaker(TabulationHash(derive_seed(options.seed, kSeedTagTieBreak))));
    default:
        return run_with_tie_breaker(g, options, InconsistentTieBreaker{});
    }
}

} // namespace parch
