#pragma once

#include "parch/common.hpp"
#include "parch/graph.hpp"

#include <vector>

namespace parch {

/// Textbook Dijkstra over the input graph. This is the ground truth the CH
/// queries are verified against, so it deliberately shares no queue or
/// storage code with the rest of the engine: a lazy-deletion std::priority_queue
/// and a plain distance array.
class DijkstraOracle {
  public:
    explicit DijkstraOracle(const InputGraph& g);

    /// Shortest-path distance from s to t, kUnreachable if none.
    Weight distance(NodeId s, NodeId t);

    /// Distances from s to every node (kUnreachable where disconnected).
    std::vector<Weight> distances_from(NodeId s);

    std::uint32_t node_count() const { return csr_.node_count; }

  private:
    void run(NodeId s, NodeId target); // target == kInvalidNode runs to exhaustion

    CsrGraph csr_;
    std::vector<Weight> dist_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t current_stamp_ = 0;
};

/// One-shot convenience wrapper.
Weight dijkstra_oracle(const InputGraph& g, NodeId s, NodeId t);

} // namespace parch
