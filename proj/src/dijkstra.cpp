#include "parch/dijkstra.hpp"

#include <queue>

namespace parch {

DijkstraOracle::DijkstraOracle(const InputGraph& g)
    : csr_(build_csr(g)), dist_(g.node_count, kUnreachable), stamp_(g.node_count, 0)
{
}

void DijkstraOracle::run(NodeId s, NodeId target)
{
    ++current_stamp_;
    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    dist_[s] = 0;
    stamp_[s] = current_stamp_;
    queue.push({0, s});
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (stamp_[u] != current_stamp_ || d != dist_[u])
            continue; // stale entry
        if (u == target)
            return;
        for (std::uint32_t i = csr_.offsets[u]; i < csr_.offsets[u + 1]; ++i) {
            NodeId v = csr_.targets[i];
            Weight nd = d + csr_.weights[i];
            if (stamp_[v] != current_stamp_ || nd < dist_[v]) {
                dist_[v] = nd;
                stamp_[v] = current_stamp_;
                queue.push({nd, v});
            }
        }
    }
}

Weight DijkstraOracle::distance(NodeId s, NodeId t)
{
    run(s, t);
    return stamp_[t] == current_stamp_ ? dist_[t] : kUnreachable;
}

std::vector<Weight> DijkstraOracle::distances_from(NodeId s)
{
    run(s, kInvalidNode);
    std::vector<Weight> out(csr_.node_count, kUnreachable);
    for (NodeId v = 0; v < csr_.node_count; ++v)
        if (stamp_[v] == current_stamp_)
            out[v] = dist_[v];
    return out;
}

Weight dijkstra_oracle(const InputGraph& g, NodeId s, NodeId t)
{
    DijkstraOracle oracle(g);
    return oracle.distance(s, t);
}

} // namespace parch
