#include "parch/ch_graph.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

namespace parch {

namespace {

constexpr char kChMagic[8] = {'P', 'A', 'R', 'C', 'H', 'C', 'H', '\0'};
constexpr std::uint8_t kChVersion = 1;

struct RankedArc {
    NodeId tail;
    NodeId head;
    Weight weight;
    NodeId middle;
};

void write_raw(std::ostream& out, const void* data, std::size_t size)
{
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void read_raw(std::istream& in, void* data, std::size_t size)
{
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (!in)
        throw std::runtime_error("unexpected end of CH file");
}

template <typename T>
void write_pod(std::ostream& out, T value)
{
    write_raw(out, &value, sizeof(T));
}

template <typename T>
T read_pod(std::istream& in)
{
    T value;
    read_raw(in, &value, sizeof(T));
    return value;
}

void write_edges(std::ostream& out, const std::vector<CHEdge>& edges)
{
    for (const CHEdge& e : edges) {
        write_pod<std::uint32_t>(out, e.head);
        write_pod<std::uint64_t>(out, e.weight);
        write_pod<std::uint32_t>(out, e.middle);
    }
}

std::vector<CHEdge> read_edges(std::istream& in, std::uint64_t count)
{
    std::vector<CHEdge> edges;
    edges.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        CHEdge e;
        e.head = read_pod<std::uint32_t>(in);
        e.weight = read_pod<std::uint64_t>(in);
        e.middle = read_pod<std::uint32_t>(in);
        edges.push_back(e);
    }
    return edges;
}

void write_u32s(std::ostream& out, const std::vector<std::uint32_t>& values)
{
    write_raw(out, values.data(), values.size() * sizeof(std::uint32_t));
}

std::vector<std::uint32_t> read_u32s(std::istream& in, std::size_t count)
{
    std::vector<std::uint32_t> values(count);
    if (count > 0)
        read_raw(in, values.data(), count * sizeof(std::uint32_t));
    return values;
}

// Bucket arcs into per-node lists sorted by head; parallel arcs collapse to
// the minimum weight, original edges win ties so unpacking bottoms out.
void fill_side(std::uint32_t n, std::vector<RankedArc>& arcs,
               std::vector<std::uint32_t>& offsets, std::vector<CHEdge>& edges)
{
    auto rank_key = [](const RankedArc& a) {
        return std::tuple(a.tail, a.head, a.weight, a.middle == kInvalidNode ? 0 : 1, a.middle);
    };
    std::sort(arcs.begin(), arcs.end(),
              [&](const RankedArc& x, const RankedArc& y) { return rank_key(x) < rank_key(y); });

    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    edges.clear();
    edges.reserve(arcs.size());
    bool have_last = false;
    NodeId last_tail = kInvalidNode, last_head = kInvalidNode;
    for (const RankedArc& a : arcs) {
        if (have_last && a.tail == last_tail && a.head == last_head)
            continue; // dominated parallel arc
        edges.push_back(CHEdge{a.head, a.weight, a.middle});
        ++offsets[a.tail + 1];
        last_tail = a.tail;
        last_head = a.head;
        have_last = true;
    }
    for (std::size_t i = 1; i < offsets.size(); ++i)
        offsets[i] += offsets[i - 1];
}

} // namespace

CHGraph build_ch_graph(const InputGraph& g, const CHResult& result)
{
    assert(result.node_count == g.node_count);
    CHGraph ch;
    ch.node_count_ = g.node_count;
    ch.rank_ = result.rank;

    std::vector<RankedArc> up, down;
    auto add_arc = [&](NodeId tail, NodeId head, Weight weight, NodeId middle) {
        if (ch.rank_[head] > ch.rank_[tail])
            up.push_back(RankedArc{tail, head, weight, middle});
        else
            down.push_back(RankedArc{head, tail, weight, middle}); // stored at the lower end
    };

    const CsrGraph csr = build_csr(g);
    for (NodeId u = 0; u < csr.node_count; ++u)
        for (std::uint32_t i = csr.offsets[u]; i < csr.offsets[u + 1]; ++i)
            add_arc(u, csr.targets[i], csr.weights[i], kInvalidNode);
    for (const ShortcutRecord& r : result.shortcuts) {
        if (r.forward)
            add_arc(r.from, r.to, r.weight, r.middle);
        if (r.backward)
            add_arc(r.to, r.from, r.weight, r.middle);
    }

    fill_side(g.node_count, up, ch.up_offsets_, ch.up_edges_);
    fill_side(g.node_count, down, ch.down_offsets_, ch.down_edges_);
    return ch;
}

const CHEdge& CHGraph::find_up(NodeId v, NodeId head) const
{
    auto edges = up_edges(v);
    auto it = std::lower_bound(edges.begin(), edges.end(), head,
                               [](const CHEdge& e, NodeId h) { return e.head < h; });
    if (it == edges.end() || it->head != head)
        throw std::logic_error("CH graph is inconsistent: missing upward constituent edge");
    return *it;
}

const CHEdge& CHGraph::find_down(NodeId v, NodeId head) const
{
    auto edges = down_edges(v);
    auto it = std::lower_bound(edges.begin(), edges.end(), head,
                               [](const CHEdge& e, NodeId h) { return e.head < h; });
    if (it == edges.end() || it->head != head)
        throw std::logic_error("CH graph is inconsistent: missing downward constituent edge");
    return *it;
}

void CHGraph::save(std::ostream& out) const
{
    write_raw(out, kChMagic, sizeof(kChMagic));
    write_pod<std::uint8_t>(out, kChVersion);
    write_pod<std::uint32_t>(out, node_count_);
    write_pod<std::uint64_t>(out, up_edges_.size());
    write_pod<std::uint64_t>(out, down_edges_.size());
    write_u32s(out, rank_);
    write_u32s(out, up_offsets_);
    write_edges(out, up_edges_);
    write_u32s(out, down_offsets_);
    write_edges(out, down_edges_);
}

CHGraph CHGraph::load(std::istream& in)
{
    char magic[8];
    read_raw(in, magic, sizeof(magic));
    if (std::memcmp(magic, kChMagic, sizeof(magic)) != 0)
        throw std::runtime_error("not a CH file (bad magic)");
    auto version = read_pod<std::uint8_t>(in);
    if (version != kChVersion)
        throw std::runtime_error("unsupported CH file version " + std::to_string(version));
    CHGraph ch;
    ch.node_count_ = read_pod<std::uint32_t>(in);
    auto up_count = read_pod<std::uint64_t>(in);
    auto down_count = read_pod<std::uint64_t>(in);
    ch.rank_ = read_u32s(in, ch.node_count_);
    ch.up_offsets_ = read_u32s(in, static_cast<std::size_t>(ch.node_count_) + 1);
    ch.up_edges_ = read_edges(in, up_count);
    ch.down_offsets_ = read_u32s(in, static_cast<std::size_t>(ch.node_count_) + 1);
    ch.down_edges_ = read_edges(in, down_count);
    return ch;
}

void CHGraph::save_file(const std::string& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write CH file: " + path);
    save(out);
}

CHGraph CHGraph::load_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open CH file: " + path);
    return load(in);
}

QueryContext::QueryContext(const CHGraph& ch)
    : ch_(&ch), forward_(DenseStore(ch.node_count())), backward_(DenseStore(ch.node_count())),
      parent_fwd_(ch.node_count(), kInvalidNode), middle_fwd_(ch.node_count(), kInvalidNode),
      parent_bwd_(ch.node_count(), kInvalidNode), middle_bwd_(ch.node_count(), kInvalidNode)
{
}

QueryContext::Result QueryContext::query(NodeId s, NodeId t)
{
    Result result;
    result.source = s;
    result.target = t;
    if (s == t) {
        result.distance = 0;
        result.meet = s;
        return result;
    }

    forward_.reset();
    backward_.reset();
    forward_.push_or_decrease(s, 0);
    parent_fwd_[s] = kInvalidNode;
    backward_.push_or_decrease(t, 0);
    parent_bwd_[t] = kInvalidNode;

    Weight best = kUnreachable;
    NodeId meet = kInvalidNode;
    auto consider_meet = [&](NodeId v, Weight dist, const MinHeap<DenseStore>& other) {
        if (auto od = other.current_distance(v)) {
            Weight total = dist + *od;
            if (total < best) {
                best = total;
                meet = v;
            }
        }
    };

    // each direction keeps settling until its smallest key cannot improve the
    // tentative best; CH paths peak at the meet node, so the searches must
    // run past the first meeting
    while (true) {
        bool fwd_active = !forward_.empty() && forward_.min_key() < best;
        bool bwd_active = !backward_.empty() && backward_.min_key() < best;
        if (!fwd_active && !bwd_active)
            break;

        bool take_forward =
            fwd_active && (!bwd_active || forward_.min_key() <= backward_.min_key());
        if (take_forward) {
            auto [u, dist] = *forward_.pop_min();
            for (const CHEdge& e : ch_->up_edges(u)) {
                Weight nd = dist + e.weight;
                if (forward_.push_or_decrease(e.head, nd)) {
                    parent_fwd_[e.head] = u;
                    middle_fwd_[e.head] = e.middle;
                    consider_meet(e.head, nd, backward_);
                }
            }
        } else {
            auto [u, dist] = *backward_.pop_min();
            for (const CHEdge& e : ch_->down_edges(u)) {
                Weight nd = dist + e.weight;
                if (backward_.push_or_decrease(e.head, nd)) {
                    parent_bwd_[e.head] = u;
                    middle_bwd_[e.head] = e.middle;
                    consider_meet(e.head, nd, forward_);
                }
            }
        }
    }

    result.distance = best;
    result.meet = meet;
    return result;
}

void QueryContext::expand(NodeId a, NodeId b, NodeId middle, std::vector<NodeId>& out) const
{
    if (middle == kInvalidNode) {
        out.push_back(b);
        return;
    }
    // recursion depth is bounded by the contraction order: middles of the
    // constituents were contracted strictly earlier
    const CHEdge& first = ch_->find_down(middle, a); // arc a -> middle
    expand(a, middle, first.middle, out);
    const CHEdge& second = ch_->find_up(middle, b); // arc middle -> b
    expand(middle, b, second.middle, out);
}

std::vector<NodeId> QueryContext::unpack(const Result& r) const
{
    std::vector<NodeId> path;
    if (!r.reachable())
        return path;
    path.push_back(r.source);
    if (r.source == r.target)
        return path;

    struct Hop {
        NodeId tail, head, middle;
    };
    std::vector<Hop> up_chain;
    for (NodeId v = r.meet; v != r.source;) {
        NodeId p = parent_fwd_[v];
        up_chain.push_back(Hop{p, v, middle_fwd_[v]});
        v = p;
    }
    for (auto it = up_chain.rbegin(); it != up_chain.rend(); ++it)
        expand(it->tail, it->head, it->middle, path);
    for (NodeId v = r.meet; v != r.target;) {
        NodeId p = parent_bwd_[v];
        expand(v, p, middle_bwd_[v], path);
        v = p;
    }
    return path;
}

} // namespace parch
