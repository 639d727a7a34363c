#pragma once

#include "seriagraph/combinatorics.hpp"
#include "seriagraph/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace seriagraph {

/// Above this many assemblages solve_single refuses unless overridden.
inline constexpr int kEnumerationGate = 13;

struct EnumerationRequest {
    enum class Mode { all_valid, best_scoring };

    AssemblageMatrix matrix;
    UnimodalityCriterion criterion{};
    Mode mode = Mode::all_valid;
    unsigned worker_count = 1;
    bool feasibility_override = false;
};

struct ScoredOrdering {
    Ordering ordering;
    EvaluationReport report;

    bool operator==(const ScoredOrdering&) const = default;
};

struct EnumerationResult {
    /// Sorted by (score, permutation).
    std::vector<ScoredOrdering> solutions;
    BigCount tested_count = 0;
    double elapsed_seconds = 0.0;
};

/// Visits the canonical permutations of 0..n-1 whose first two entries are
/// (first, second), in lexicographic order. For n == 1 the only block is
/// (0, 0). Stops early when `visit` returns false; returns the visit count.
template <typename Visitor>
std::size_t for_each_in_prefix_block(int n, int first, int second, Visitor&& visit)
{
    if (n == 1) {
        if (first != 0 || second != 0) {
            return 0;
        }
        std::vector<int> one{0};
        visit(std::as_const(one));
        return 1;
    }
    if (first == second || first < 0 || second < 0 || first >= n || second >= n) {
        return 0;
    }
    std::vector<int> perm;
    perm.reserve(static_cast<std::size_t>(n));
    perm.push_back(first);
    perm.push_back(second);
    for (int v = 0; v < n; ++v) {
        if (v != first && v != second) {
            perm.push_back(v);
        }
    }
    std::size_t visited = 0;
    do {
        if (perm.front() < perm.back()) {
            ++visited;
            if (!visit(std::as_const(perm))) {
                break;
            }
        }
    } while (std::next_permutation(perm.begin() + 2, perm.end()));
    return visited;
}

/// Lexicographically ordered (first, second) prefix blocks covering all
/// canonical permutations of 0..n-1.
std::vector<std::pair<int, int>> prefix_blocks(int n);

/// Visits every canonical permutation of 0..n-1 exactly once, in lexicographic
/// order. `visit` receives a const std::vector<int>& and returns bool
/// (false stops the stream).
template <typename Visitor>
void for_each_canonical_permutation(int n, Visitor&& visit)
{
    bool go = true;
    for (auto [a, b] : prefix_blocks(n)) {
        for_each_in_prefix_block(n, a, b, [&](const std::vector<int>& p) {
            go = visit(p);
            return go;
        });
        if (!go) {
            return;
        }
    }
}

/// Materialized stream; intended for small n.
std::vector<Ordering> canonical_permutations(int n);

/// Evaluates every canonical permutation of the request's matrix. Blocks of
/// the permutation space are dealt round-robin to worker threads and merged
/// deterministically, so the result does not depend on worker_count.
/// Throws FeasibilityRefused when n > kEnumerationGate without override.
EnumerationResult solve_single(const EnumerationRequest& req);

/// Single-threaded path with no block partitioning; oracle tests use this.
EnumerationResult solve_single_reference(const EnumerationRequest& req);

struct FeasibilityReport {
    enum class Tier { comfortable, limit, infeasible };

    int n = 0;
    BigCount count;
    TimeEstimate estimate;
    Tier tier = Tier::comfortable;
    std::string advisory;
};

std::string to_string(FeasibilityReport::Tier tier);

/// Time to test all n!/2 canonical orderings under `budget`, with a tier:
/// comfortable for n <= 10, limit for 11..13, infeasible from 14.
FeasibilityReport feasibility_report(int n, const ComputeBudget& budget = {});

/// Default worker count: SERIAGRAPH_WORKERS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
unsigned default_worker_count();

} // namespace seriagraph
