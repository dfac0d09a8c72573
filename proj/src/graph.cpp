#include "parch/graph.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

namespace parch {

namespace {

constexpr char kGraphMagic[8] = {'P', 'A', 'R', 'C', 'H', 'G', 'R', '\0'};
constexpr std::uint8_t kGraphVersion = 1;

void write_raw(std::ostream& out, const void* data, std::size_t size)
{
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void read_raw(std::istream& in, void* data, std::size_t size)
{
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (!in)
        throw std::runtime_error("unexpected end of binary graph file");
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

} // namespace

InputGraph load_dimacs(std::istream& in)
{
    InputGraph g;
    bool have_header = false;
    std::uint64_t declared_arcs = 0;
    std::uint64_t seen_arcs = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        char kind = 0;
        ls >> kind;
        if (kind == 'p') {
            if (have_header)
                throw ParseError(line_no, "duplicate problem line");
            std::string sp;
            long long n = -1, m = -1;
            ls >> sp >> n >> m;
            if (!ls || sp != "sp" || n < 0 || m < 0)
                throw ParseError(line_no, "malformed problem line, expected 'p sp n m'");
            g.node_count = static_cast<std::uint32_t>(n);
            declared_arcs = static_cast<std::uint64_t>(m);
            g.arcs.reserve(declared_arcs);
            have_header = true;
        } else if (kind == 'a') {
            if (!have_header)
                throw ParseError(line_no, "arc line before problem line");
            long long u = 0, v = 0, w = 0;
            ls >> u >> v >> w;
            if (!ls)
                throw ParseError(line_no, "malformed arc line, expected 'a u v w'");
            if (u < 1 || u > g.node_count || v < 1 || v > g.node_count)
                throw ParseError(line_no, "id out of range");
            if (w < 0)
                throw ParseError(line_no, "negative weight");
            if (w > std::numeric_limits<std::uint32_t>::max())
                throw ParseError(line_no, "weight exceeds 32-bit range");
            ++seen_arcs;
            if (u == v)
                continue; // self-loops never lie on shortest paths
            g.arcs.push_back(Arc{static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1),
                                 static_cast<std::uint32_t>(w), true, false});
        } else {
            throw ParseError(line_no, std::string("unknown line type '") + kind + "'");
        }
    }
    if (!have_header)
        throw ParseError(line_no, "missing problem line");
    if (seen_arcs != declared_arcs)
        throw ParseError(line_no, "arc count mismatch: header declares " +
                                      std::to_string(declared_arcs) + ", found " +
                                      std::to_string(seen_arcs));
    return g;
}

InputGraph load_dimacs_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    return load_dimacs(in);
}

void save_dimacs(const InputGraph& g, std::ostream& out)
{
    std::uint64_t arcs = 0;
    for (const Arc& a : g.arcs)
        arcs += static_cast<std::uint64_t>(a.forward) + static_cast<std::uint64_t>(a.backward);
    out << "p sp " << g.node_count << ' ' << arcs << '\n';
    for (const Arc& a : g.arcs) {
        if (a.forward)
            out << "a " << a.from + 1 << ' ' << a.to + 1 << ' ' << a.weight << '\n';
        if (a.backward)
            out << "a " << a.to + 1 << ' ' << a.from + 1 << ' ' << a.weight << '\n';
    }
}

void save_graph_binary(const InputGraph& g, std::ostream& out)
{
    write_raw(out, kGraphMagic, sizeof(kGraphMagic));
    write_pod<std::uint8_t>(out, kGraphVersion);
    write_pod<std::uint32_t>(out, g.node_count);
    write_pod<std::uint64_t>(out, g.arcs.size());
    for (const Arc& a : g.arcs) {
        write_pod<std::uint32_t>(out, a.from);
        write_pod<std::uint32_t>(out, a.to);
        write_pod<std::uint32_t>(out, a.weight);
        std::uint8_t flags = (a.forward ? 1u : 0u) | (a.backward ? 2u : 0u);
        write_pod<std::uint8_t>(out, flags);
    }
}

InputGraph load_graph_binary(std::istream& in)
{
    char magic[8];
    read_raw(in, magic, sizeof(magic));
    if (std::memcmp(magic, kGraphMagic, sizeof(magic)) != 0)
        throw std::runtime_error("not a binary graph file (bad magic)");
    auto version = read_pod<std::uint8_t>(in);
    if (version != kGraphVersion)
        throw std::runtime_error("unsupported binary graph version " + std::to_string(version));
    InputGraph g;
    g.node_count = read_pod<std::uint32_t>(in);
    auto count = read_pod<std::uint64_t>(in);
    g.arcs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Arc a;
        a.from = read_pod<std::uint32_t>(in);
        a.to = read_pod<std::uint32_t>(in);
        a.weight = read_pod<std::uint32_t>(in);
        auto flags = read_pod<std::uint8_t>(in);
        a.forward = (flags & 1u) != 0;
        a.backward = (flags & 2u) != 0;
        if (a.from >= g.node_count || a.to >= g.node_count)
            throw std::runtime_error("binary graph arc endpoint out of range");
        g.arcs.push_back(a);
    }
    return g;
}

InputGraph load_graph_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    char magic[8] = {};
    in.read(magic, sizeof(magic));
    bool binary = in.gcount() == sizeof(magic) && std::memcmp(magic, kGraphMagic, 8) == 0;
    in.clear();
    in.seekg(0);
    if (binary)
        return load_graph_binary(in);
    return load_dimacs(in);
}

void save_graph_file(const InputGraph& g, const std::string& path, bool binary)
{
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out)
        throw std::runtime_error("cannot write graph file: " + path);
    if (binary)
        save_graph_binary(g, out);
    else
        save_dimacs(g, out);
}

namespace {

struct DirectedArc {
    NodeId from;
    NodeId to;
    Weight weight;
};

// Expands direction flags, drops self-loops, keeps the minimum weight per
// ordered pair. Result is sorted by (from, to).
std::vector<DirectedArc> collapsed_arcs(const InputGraph& g, bool reversed)
{
    std::vector<DirectedArc> arcs;
    arcs.reserve(g.arcs.size());
    for (const Arc& a : g.arcs) {
        if (a.from == a.to)
            continue;
        if (a.forward)
            arcs.push_back(reversed ? DirectedArc{a.to, a.from, a.weight}
                                    : DirectedArc{a.from, a.to, a.weight});
        if (a.backward)
            arcs.push_back(reversed ? DirectedArc{a.from, a.to, a.weight}
                                    : DirectedArc{a.to, a.from, a.weight});
    }
    std::sort(arcs.begin(), arcs.end(), [](const DirectedArc& x, const DirectedArc& y) {
        return std::tie(x.from, x.to, x.weight) < std::tie(y.from, y.to, y.weight);
    });
    std::vector<DirectedArc> out;
    out.reserve(arcs.size());
    for (const DirectedArc& a : arcs) {
        if (!out.empty() && out.back().from == a.from && out.back().to == a.to)
            continue; // sorted by weight within the pair, keep the first
        out.push_back(a);
    }
    return out;
}

CsrGraph csr_from_arcs(std::uint32_t node_count, const std::vector<DirectedArc>& arcs)
{
    CsrGraph csr;
    csr.node_count = node_count;
    csr.offsets.assign(static_cast<std::size_t>(node_count) + 1, 0);
    for (const DirectedArc& a : arcs)
        ++csr.offsets[a.from + 1];
    for (std::size_t i = 1; i < csr.offsets.size(); ++i)
        csr.offsets[i] += csr.offsets[i - 1];
    csr.targets.reserve(arcs.size());
    csr.weights.reserve(arcs.size());
    for (const DirectedArc& a : arcs) {
        csr.targets.push_back(a.to);
        csr.weights.push_back(a.weight);
    }
    return csr;
}

} // namespace

CsrGraph build_csr(const InputGraph& g)
{
    return csr_from_arcs(g.node_count, collapsed_arcs(g, false));
}

CsrGraph build_reverse_csr(const InputGraph& g)
{
    return csr_from_arcs(g.node_count, collapsed_arcs(g, true));
}

void ContractionGraph::add_half(NodeId at, NodeId target, Weight weight, NodeId middle,
                                bool forward, bool backward, bool shortcut,
                                std::uint32_t originals)
{
    for (OverlayEdge& e : edges_[at]) {
        if (e.target != target || e.forward != forward || e.backward != backward)
            continue;
        if (weight < e.weight) {
            e.weight = weight;
            e.middle = middle;
            e.shortcut = shortcut;
            e.originals = originals;
        }
        return;
    }
    edges_[at].push_back(OverlayEdge{target, weight, middle, originals, forward, backward, shortcut});
}

void ContractionGraph::insert_shortcut(NodeId from, NodeId to, Weight weight, NodeId middle,
                                       bool forward, bool backward, std::uint32_t originals)
{
    assert(from != to);
    assert(!contracted(from) && !contracted(to));
    add_half(from, to, weight, middle, forward, backward, true, originals);
    add_half(to, from, weight, middle, backward, forward, true, originals);
    ++shortcut_count_;
}

ContractionGraph build_contraction_graph(const InputGraph& g)
{
    ContractionGraph cg;
    cg.edges_.resize(g.node_count);
    cg.contracted_.assign(g.node_count, 0);
    cg.remaining_ = g.node_count;

    const auto arcs = collapsed_arcs(g, false);
    // Pair up opposite arcs of equal weight into one bidirectional entry.
    for (const DirectedArc& a : arcs) {
        if (a.to < a.from)
            continue; // handled from the lower endpoint
        Weight there = a.weight;
        Weight back = kUnreachable;
        auto lo = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(a.to, a.from),
                                   [](const DirectedArc& x, const std::pair<NodeId, NodeId>& key) {
                                       return std::tie(x.from, x.to) <
                                              std::tie(key.first, key.second);
                                   });
        if (lo != arcs.end() && lo->from == a.to && lo->to == a.from)
            back = lo->weight;
        if (back == there) {
            cg.add_half(a.from, a.to, there, kInvalidNode, true, true, false, 1);
            cg.add_half(a.to, a.from, there, kInvalidNode, true, true, false, 1);
        } else {
            cg.add_half(a.from, a.to, there, kInvalidNode, true, false, false, 1);
            cg.add_half(a.to, a.from, there, kInvalidNode, false, true, false, 1);
        }
    }
    // Arcs pointing from the higher to the lower endpoint that had no equal
    // opposite partner above.
    for (const DirectedArc& a : arcs) {
        if (a.to > a.from)
            continue;
        auto lo = std::lower_bound(arcs.begin(), arcs.end(), std::make_pair(a.to, a.from),
                                   [](const DirectedArc& x, const std::pair<NodeId, NodeId>& key) {
                                       return std::tie(x.from, x.to) <
                                              std::tie(key.first, key.second);
                                   });
        bool paired = lo != arcs.end() && lo->from == a.to && lo->to == a.from &&
                      lo->weight == a.weight;
        if (paired)
            continue;
        cg.add_half(a.from, a.to, a.weight, kInvalidNode, true, false, false, 1);
        cg.add_half(a.to, a.from, a.weight, kInvalidNode, false, true, false, 1);
    }
    return cg;
}

} // namespace parch
