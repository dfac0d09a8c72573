#pragma once

#include "parch/common.hpp"
#include "parch/tabulation.hpp"

#include <cassert>
#include <concepts>
#include <string>
#include <vector>

namespace parch {

/// A tie-breaker is a strict total order on node ids, consulted whenever two
/// nodes have equal contraction priority. Consistency (exactly one of
/// precedes(a,b), precedes(b,a) for a != b) is what keeps the independent-set
/// selection from starving.
template <typename T>
concept TieBreakerLike = requires(const T tb, NodeId a, NodeId b) {
    { tb.precedes(a, b) } -> std::convertible_to<bool>;
};

/// Shuffled permutation of 0..n-1; one random rank per node. Simple and
/// consistent, but every comparison touches an array of size n.
class BiasTieBreaker {
  public:
    BiasTieBreaker(std::uint32_t node_count, std::uint64_t seed);

    bool precedes(NodeId a, NodeId b) const
    {
        assert(a != b);
        return bias_[a] < bias_[b];
    }

    const std::vector<std::uint32_t>& bias() const { return bias_; }

  private:
    std::vector<std::uint32_t> bias_;
};

/// Orders nodes by tabulation hash value, falling back to the raw id when the
/// hashes collide. Constant space regardless of graph size.
class XorTieBreaker {
  public:
    explicit XorTieBreaker(TabulationHash hash) : hash_(std::move(hash)) {}

    bool precedes(NodeId a, NodeId b) const
    {
        assert(a != b);
        std::uint16_t ha = hash_(a);
        std::uint16_t hb = hash_(b);
        if (ha != hb)
            return ha < hb;
        return a < b;
    }

    const TabulationHash& hash() const { return hash_; }

  private:
    TabulationHash hash_;
};

/// Test-only comparator that never orders anything. Exists so that the
/// engine's starvation guard has something to trip over.
class InconsistentTieBreaker {
  public:
    bool precedes(NodeId, NodeId) const { return false; }
};

enum class TieBreakerKind { Bias, Xor, InconsistentForTests };

inline std::string to_string(TieBreakerKind k)
{
    switch (k) {
    case TieBreakerKind::Bias: return "bias";
    case TieBreakerKind::Xor: return "xor";
    default: return "inconsistent-test";
    }
}

} // namespace parch
