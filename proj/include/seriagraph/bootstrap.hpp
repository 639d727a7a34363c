#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace seriagraph {

/// Percentile interval of one class frequency under multinomial resampling.
struct FrequencyInterval {
    double lower = 0.0;
    double upper = 0.0;
    double point = 0.0;
    std::int64_t sample_size = 0;

    bool operator==(const FrequencyInterval&) const = default;
};

struct BootstrapConfig {
    double alpha = 0.05;
    unsigned replicates = 1000;
    std::uint64_t seed = 0;
};

inline constexpr unsigned kMinReplicates = 100;
inline constexpr unsigned kRecommendedReplicates = 1000;

/// Throws std::invalid_argument when alpha is outside (0, 1) or replicates is
/// below kMinReplicates. Returns false when replicates is below the
/// recommended count, so callers can warn.
bool validate(const BootstrapConfig& cfg);

/// Generator seed for one row: cfg.seed mixed with a stable hash of the counts.
/// Depends only on the row content, never on its position in a matrix.
std::uint64_t row_seed(std::span<const std::int64_t> counts_row, std::uint64_t seed);

/// Resamples the row total multinomially at the observed frequencies
/// cfg.replicates times and returns, per class, the [alpha/2, 1 - alpha/2]
/// percentile interval (linear interpolation between order statistics) of the
/// resampled frequency. The interval is widened if needed to contain the
/// observed frequency. Throws std::invalid_argument on a zero row total.
std::vector<FrequencyInterval> bootstrap_intervals(std::span<const std::int64_t> counts_row,
                                                   const BootstrapConfig& cfg);

/// a lies entirely above b. Touching intervals do not count.
inline bool significantly_greater(const FrequencyInterval& a, const FrequencyInterval& b)
{
    return a.lower > b.upper;
}

} // namespace seriagraph
