#include "parch/tabulation.hpp"

#include <numeric>

namespace parch {

TabulationHash::TabulationHash(std::uint64_t seed) : seed_(seed)
{
    SplitMix64 rng(seed);
    std::iota(low_.begin(), low_.end(), static_cast<std::uint16_t>(0));
    deterministic_shuffle(low_, rng);
    std::iota(high_.begin(), high_.end(), static_cast<std::uint16_t>(0));
    deterministic_shuffle(high_, rng);
}

TabulationHash TabulationHash::identity_for_tests()
{
    TabulationHash h{Unfilled{}};
    std::iota(h.low_.begin(), h.low_.end(), static_cast<std::uint16_t>(0));
    std::iota(h.high_.begin(), h.high_.end(), static_cast<std::uint16_t>(0));
    return h;
}

TabulationHash TabulationHash::constant_for_tests(std::uint16_t value)
{
    TabulationHash h{Unfilled{}};
    h.low_.fill(value);
    h.high_.fill(0);
    return h;
}

} // namespace parch
