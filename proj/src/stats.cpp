#include "parch/stats.hpp"

#include "parch/common.hpp"

#include <cmath>
#include <vector>

namespace parch {

double chi_square_quantile(double degrees_of_freedom, double normal_quantile)
{
    double a = 2.0 / (9.0 * degrees_of_freedom);
    double base = 1.0 - a + normal_quantile * std::sqrt(a);
    return degrees_of_freedom * base * base * base;
}

HashStatsReport compute_hash_stats(const TabulationHash& hash, std::uint64_t samples,
                                   std::uint64_t seed)
{
    HashStatsReport report;
    report.samples = samples;

    // pairwise collisions over random distinct pairs
    {
        SplitMix64 rng(derive_seed(seed, 0xC0));
        std::uint64_t collisions = 0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            auto a = static_cast<std::uint32_t>(rng.next());
            auto b = static_cast<std::uint32_t>(rng.next());
            while (b == a)
                b = static_cast<std::uint32_t>(rng.next());
            if (hash(a) == hash(b))
                ++collisions;
        }
        report.collision_pairs = collisions;
        report.collision_rate = static_cast<double>(collisions) / static_cast<double>(samples);
    }

    // bucket uniformity; the Feistel permutation supplies distinct keys
    {
        Feistel32 distinct_keys(derive_seed(seed, 0xC1));
        std::vector<std::uint64_t> buckets(TabulationHash::kTableSize, 0);
        for (std::uint64_t i = 0; i < samples; ++i)
            ++buckets[hash(distinct_keys(static_cast<std::uint32_t>(i)))];
        double expected = static_cast<double>(samples) / static_cast<double>(buckets.size());
        double stat = 0.0;
        for (std::uint64_t count : buckets) {
            double diff = static_cast<double>(count) - expected;
            stat += diff * diff / expected;
        }
        report.chi_square = stat;
        report.chi_square_threshold =
            chi_square_quantile(static_cast<double>(buckets.size() - 1), kNormalQuantile999);
        report.chi_square_pass = stat <= report.chi_square_threshold;
    }

    // does hash order correlate with id order? count a<b among ordered pairs
    {
        SplitMix64 rng(derive_seed(seed, 0xC2));
        std::uint64_t preceding = 0;
        std::uint64_t id_smaller = 0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            auto a = static_cast<std::uint32_t>(rng.next());
            auto b = static_cast<std::uint32_t>(rng.next());
            while (b == a)
                b = static_cast<std::uint32_t>(rng.next());
            std::uint16_t ha = hash(a), hb = hash(b);
            bool a_precedes = ha != hb ? ha < hb : a < b;
            if (a_precedes) {
                ++preceding;
                if (a < b)
                    ++id_smaller;
            }
        }
        report.balance_fraction =
            preceding == 0 ? 0.0
                           : static_cast<double>(id_smaller) / static_cast<double>(preceding);
    }

    return report;
}

} // namespace parch
