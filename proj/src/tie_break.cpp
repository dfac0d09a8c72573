#include "parch/tie_break.hpp"

#include <numeric>

namespace parch {

BiasTieBreaker::BiasTieBreaker(std::uint32_t node_count, std::uint64_t seed)
    : bias_(node_count)
{
    assert(node_count >= 1);
    std::iota(bias_.begin(), bias_.end(), 0u);
    SplitMix64 rng(seed);
    deterministic_shuffle(bias_, rng);
}

} // namespace parch
