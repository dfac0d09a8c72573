#pragma once

#include "parch/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace parch {

/// One input edge. `forward` means the arc from->to exists, `backward` means
/// to->from exists with the same weight. DIMACS arcs are forward-only; the
/// synthetic generator emits both flags for its undirected roads.
struct Arc {
    NodeId from = 0;
    NodeId to = 0;
    std::uint32_t weight = 0;
    bool forward = true;
    bool backward = false;

    bool operator==(const Arc&) const = default;
};

struct InputGraph {
    std::uint32_t node_count = 0;
    std::vector<Arc> arcs;

    std::size_t arc_count() const { return arcs.size(); }
};

/// Parses the 9th DIMACS Challenge `.gr` format: a `p sp n m` header followed
/// by `a u v w` arc lines with 1-based node ids. Self-loops are dropped; ids
/// are shifted to 0-based. Throws ParseError with the offending line number.
InputGraph load_dimacs(std::istream& in);
InputGraph load_dimacs_file(const std::string& path);

void save_dimacs(const InputGraph& g, std::ostream& out);

/// Binary graph cache. Much faster to reload than the text format and
/// byte-exact. Layout (little-endian):
///   char[8]  "PARCHGR\0"
///   u8       version (1)
///   u32      node_count
///   u64      arc_count
///   arcs     arc_count x { u32 from; u32 to; u32 weight; u8 flags }
///            flags bit0 = forward, bit1 = backward
void save_graph_binary(const InputGraph& g, std::ostream& out);
InputGraph load_graph_binary(std::istream& in);

/// Loads either format; binary is detected by its magic bytes.
InputGraph load_graph_file(const std::string& path);
void save_graph_file(const InputGraph& g, const std::string& path, bool binary);

/// Plain forward-star view of the directed arcs with self-loops dropped and
/// parallel arcs collapsed to the minimum weight per direction.
struct CsrGraph {
    std::uint32_t node_count = 0;
    std::vector<std::uint32_t> offsets; // node_count + 1
    std::vector<NodeId> targets;
    std::vector<Weight> weights;

    std::size_t degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
};

CsrGraph build_csr(const InputGraph& g);
/// Same collapsing rules, arcs reversed. Used by searches that walk incoming arcs.
CsrGraph build_reverse_csr(const InputGraph& g);

/// Adjacency entry of the contraction overlay. Every logical edge {u,v} is
/// recorded at both endpoints; at node u an entry with target v means
///   forward  -> arc u->v with this weight
///   backward -> arc v->u with this weight
/// Shortcut entries remember the contracted middle node they bypass and how
/// many original edges they stand for.
struct OverlayEdge {
    NodeId target = kInvalidNode;
    Weight weight = kUnreachable;
    NodeId middle = kInvalidNode;
    std::uint32_t originals = 1;
    bool forward = false;
    bool backward = false;
    bool shortcut = false;
};

/// Dynamic graph used during preprocessing: the static input plus growable
/// per-node edge lists for shortcut insertion and a contracted flag per node.
class ContractionGraph {
  public:
    ContractionGraph() = default;

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(edges_.size()); }
    const std::vector<OverlayEdge>& edges(NodeId v) const { return edges_[v]; }

    bool contracted(NodeId v) const { return contracted_[v] != 0; }
    void mark_contracted(NodeId v)
    {
        if (!contracted_[v]) {
            contracted_[v] = 1;
            --remaining_;
        }
    }
    std::uint32_t remaining() const { return remaining_; }

    /// Inserts (or improves) the edge {from,to}. An existing edge with the
    /// same endpoint and the same direction flags is lowered to the minimum
    /// weight; `middle`, `shortcut` and `originals` follow the weight when it
    /// is lowered. Otherwise a new entry is appended at both endpoints.
    void insert_shortcut(NodeId from, NodeId to, Weight weight, NodeId middle, bool forward,
                         bool backward, std::uint32_t originals);

    /// Number of shortcut entries inserted so far (merged bidirectional
    /// entries count once).
    std::uint64_t shortcut_count() const { return shortcut_count_; }

    friend ContractionGraph build_contraction_graph(const InputGraph& g);

  private:
    void add_half(NodeId at, NodeId target, Weight weight, NodeId middle, bool forward,
                  bool backward, bool shortcut, std::uint32_t originals);

    std::vector<std::vector<OverlayEdge>> edges_;
    std::vector<std::uint8_t> contracted_;
    std::uint32_t remaining_ = 0;
    std::uint64_t shortcut_count_ = 0;
};

/// Builds the symmetric overlay from the input: per direction, parallel arcs
/// collapse to the minimum weight, and a forward/backward pair of equal weight
/// becomes one bidirectional entry. Self-loops are dropped.
ContractionGraph build_contraction_graph(const InputGraph& g);

} // namespace parch
