#pragma once

#include "parch/common.hpp"
#include "parch/contraction.hpp"
#include "parch/graph.hpp"
#include "parch/heap.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace parch {

/// One arc of the search hierarchy. `middle` is the contracted node a
/// shortcut bypasses, kInvalidNode for original edges.
struct CHEdge {
    NodeId head = kInvalidNode;
    Weight weight = kUnreachable;
    NodeId middle = kInvalidNode;

    bool operator==(const CHEdge&) const = default;
};

/// The preprocessed hierarchy: every arc is stored at its lower-ranked
/// endpoint, in the `up` set when the arc leaves that endpoint (used by the
/// forward search) and in the `down` set when the arc enters it (walked in
/// reverse by the backward search). The union is a DAG by construction.
class CHGraph {
  public:
    std::uint32_t node_count() const { return node_count_; }
    std::uint32_t rank(NodeId v) const { return rank_[v]; }
    const std::vector<std::uint32_t>& ranks() const { return rank_; }

    std::span<const CHEdge> up_edges(NodeId v) const
    {
        return {up_edges_.data() + up_offsets_[v], up_edges_.data() + up_offsets_[v + 1]};
    }
    std::span<const CHEdge> down_edges(NodeId v) const
    {
        return {down_edges_.data() + down_offsets_[v], down_edges_.data() + down_offsets_[v + 1]};
    }

    std::size_t up_edge_count() const { return up_edges_.size(); }
    std::size_t down_edge_count() const { return down_edges_.size(); }

    /// Arc v->head in the up set; used when expanding shortcuts.
    const CHEdge& find_up(NodeId v, NodeId head) const;
    /// Arc head->v in the down set.
    const CHEdge& find_down(NodeId v, NodeId head) const;

    /// Binary format (little-endian):
    ///   char[8] "PARCHCH\0", u8 version (1)
    ///   u32 node_count, u64 up_count, u64 down_count
    ///   u32 rank[node_count]
    ///   u32 up_offsets[node_count+1],   { u32 head; u64 weight; u32 middle } x up_count
    ///   u32 down_offsets[node_count+1], { u32 head; u64 weight; u32 middle } x down_count
    void save(std::ostream& out) const;
    static CHGraph load(std::istream& in);
    void save_file(const std::string& path) const;
    static CHGraph load_file(const std::string& path);

    bool operator==(const CHGraph&) const = default;

    friend CHGraph build_ch_graph(const InputGraph& g, const CHResult& result);

  private:
    std::uint32_t node_count_ = 0;
    std::vector<std::uint32_t> rank_;
    std::vector<std::uint32_t> up_offsets_;
    std::vector<std::uint32_t> down_offsets_;
    std::vector<CHEdge> up_edges_;
    std::vector<CHEdge> down_edges_;
};

/// Orients original plus shortcut arcs by rank and drops dominated parallel
/// arcs (minimum weight per endpoint pair wins; originals win weight ties).
CHGraph build_ch_graph(const InputGraph& g, const CHResult& result);

/// Reusable state for CH queries. Not thread-safe; give each thread its own.
class QueryContext {
  public:
    explicit QueryContext(const CHGraph& ch);

    struct Result {
        NodeId source = kInvalidNode;
        NodeId target = kInvalidNode;
        Weight distance = kUnreachable;
        NodeId meet = kInvalidNode;

        bool reachable() const { return distance != kUnreachable; }
    };

    /// Exact shortest-path distance via the bidirectional upward search.
    Result query(NodeId s, NodeId t);

    /// Expands the up-down path of the most recent query into the original
    /// node sequence (s first, t last). Only valid for that Result.
    std::vector<NodeId> unpack(const Result& r) const;

  private:
    void expand(NodeId a, NodeId b, NodeId middle, std::vector<NodeId>& out) const;

    const CHGraph* ch_;
    MinHeap<DenseStore> forward_;
    MinHeap<DenseStore> backward_;
    std::vector<NodeId> parent_fwd_, middle_fwd_;
    std::vector<NodeId> parent_bwd_, middle_bwd_;
};

} // namespace parch
