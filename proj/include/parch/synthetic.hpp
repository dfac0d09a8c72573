#pragma once

#include "parch/graph.hpp"

#include <cstdint>

namespace parch {

/// Connected random geometric graph: nodes are uniform points in the unit
/// square, each links bidirectionally to its nearest neighbors, and remaining
/// components are stitched along the x-order. Weights are scaled Euclidean
/// distances, so the instances behave road-network-like (mostly short edges,
/// strong locality). `avg_degree` is the targeted number of directed arcs per
/// node; deterministic per seed.
InputGraph generate_synthetic(std::uint32_t node_count, std::uint32_t avg_degree,
                              std::uint64_t seed);

} // namespace parch
