#pragma once

#include "parch/tabulation.hpp"

#include <cstdint>

namespace parch {

/// Empirical quality measures of a tabulation hash instance.
struct HashStatsReport {
    std::uint64_t samples = 0;

    // over `samples` random distinct key pairs
    std::uint64_t collision_pairs = 0;
    double collision_rate = 0.0;

    // chi-square against uniform over all 2^16 buckets, `samples` distinct keys
    double chi_square = 0.0;
    double chi_square_threshold = 0.0; // 0.999 quantile of chi2(65535)
    bool chi_square_pass = false;

    // fraction of pairs with a < b among pairs where the hash tie-breaker
    // puts a before b; 0.5 means the order ignores the input numbering
    double balance_fraction = 0.0;
};

/// Runs all three measurements with sampling streams derived from `seed`.
HashStatsReport compute_hash_stats(const TabulationHash& hash, std::uint64_t samples,
                                   std::uint64_t seed);

/// Wilson-Hilferty approximation of the chi-square quantile: accurate to a
/// few parts in 10^4 at the degree-of-freedom counts used here.
double chi_square_quantile(double degrees_of_freedom, double normal_quantile);

/// 0.999 quantile of the standard normal distribution.
inline constexpr double kNormalQuantile999 = 3.090232306167813;

} // namespace parch
