#include "seriagraph/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace seriagraph {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double percentile(const std::vector<double>& sorted, double p)
{
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

bool validate(const BootstrapConfig& cfg)
{
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        throw std::invalid_argument("bootstrap alpha must lie in (0, 1)");
    }
    if (cfg.replicates < kMinReplicates) {
        throw std::invalid_argument("bootstrap replicates must be at least " +
                                    std::to_string(kMinReplicates));
    }
    return cfg.replicates >= kRecommendedReplicates;
}

std::uint64_t row_seed(std::span<const std::int64_t> counts_row, std::uint64_t seed)
{
    // FNV-1a over the little-endian bytes of each count.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int64_t c : counts_row) {
        auto u = static_cast<std::uint64_t>(c);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    }
    return splitmix64(seed ^ splitmix64(h));
}

std::vector<FrequencyInterval> bootstrap_intervals(std::span<const std::int64_t> counts_row,
                                                   const BootstrapConfig& cfg)
{
    validate(cfg);
    const std::int64_t total = std::accumulate(counts_row.begin(), counts_row.end(), std::int64_t{0});
    if (total <= 0) {
        throw std::invalid_argument("bootstrap_intervals: row total must be positive");
    }
    const std::size_t k = counts_row.size();
    const double dtotal = static_cast<double>(total);

    std::mt19937_64 gen(row_seed(counts_row, cfg.seed));
    std::vector<std::vector<double>> samples(k, std::vector<double>(cfg.replicates));

    for (unsigned r = 0; r < cfg.replicates; ++r) {
        // Conditional binomials: class j draws from what classes < j left over.
        std::int64_t remaining = total;
        std::int64_t remaining_mass = total;
        for (std::size_t j = 0; j < k; ++j) {
            std::int64_t draw = 0;
            if (remaining > 0 && counts_row[j] > 0) {
                if (j + 1 == k || counts_row[j] == remaining_mass) {
                    draw = remaining;
                } else {
                    const double p = static_cast<double>(counts_row[j]) /
                                     static_cast<double>(remaining_mass);
                    std::binomial_distribution<std::int64_t> binom(remaining, p);
                    draw = binom(gen);
                }
            }
            samples[j][r] = static_cast<double>(draw) / dtotal;
            remaining -= draw;
            remaining_mass -= counts_row[j];
        }
    }

    std::vector<FrequencyInterval> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto& s = samples[j];
        std::sort(s.begin(), s.end());
        const double point = static_cast<double>(counts_row[j]) / dtotal;
        out[j].point = point;
        out[j].lower = std::min(percentile(s, cfg.alpha / 2.0), point);
        out[j].upper = std::max(percentile(s, 1.0 - cfg.alpha / 2.0), point);
        out[j].sample_size = total;
    }
    return out;
}

} // namespace seriagraph
