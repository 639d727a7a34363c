#pragma once

#include "seriagraph/model.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace seriagraph {

/// Set partition of 0..n-1 as a restricted-growth string: rgs[0] == 0 and each
/// label is at most one more than the largest label before it.
struct Partition {
    std::vector<int> rgs;
    int group_count = 0;

    /// Validates the string; throws std::invalid_argument otherwise.
    static Partition from_rgs(std::vector<int> rgs);

    /// Members of each group, by label; members ascend within a group.
    std::vector<std::vector<int>> groups() const;

    auto operator<=>(const Partition&) const = default;
};

/// Visits every restricted-growth string of length n with exactly m labels
/// (any number when m == 0) in lexicographic order. `visit` receives a
/// const std::vector<int>& and the label count.
template <typename Visitor>
void for_each_rgs(int n, int m, Visitor&& visit)
{
    if (n < 1) {
        return;
    }
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto& self, int i, int used) -> void {
        if (i == n) {
            if (m == 0 || used == m) {
                visit(std::as_const(rgs), used);
            }
            return;
        }
        const int remaining = n - i;
        for (int label = 0; label <= used; ++label) {
            const int next_used = label == used ? used + 1 : used;
            if (m != 0 && (next_used > m || next_used + (remaining - 1) < m)) {
                continue;
            }
            rgs[static_cast<std::size_t>(i)] = label;
            self(self, i + 1, next_used);
        }
    };
    rgs[0] = 0;
    rec(rec, 1, 1);
}

/// Partitions of n items into exactly m non-empty groups, lexicographic in
/// the restricted-growth string. Throws std::invalid_argument unless 1 <= m <= n.
std::vector<Partition> enumerate_partitions(int n, int m);

/// All partitions of n items, lexicographic in the restricted-growth string.
std::vector<Partition> enumerate_all_partitions(int n);

struct MultigroupConstraints {
    enum class Mode { exact, agglomerative };

    int min_group_size = 1;
    std::optional<int> max_groups;
    Mode mode = Mode::exact;

    bool operator==(const MultigroupConstraints&) const = default;
};

struct SolvedGroup {
    /// Ascending row indices.
    std::vector<int> members;
    Ordering ordering;
    EvaluationReport report;
    /// Every valid canonical ordering, lexicographic; filled on request only.
    std::vector<Ordering> all_orderings;

    bool operator==(const SolvedGroup&) const = default;
};

struct GroupedSolution {
    /// groups[g] holds the members labelled g in `partition`.
    std::vector<SolvedGroup> groups;
    Partition partition;

    bool operator==(const GroupedSolution&) const = default;
};

/// Above this many assemblages solve_exact refuses unless overridden.
inline constexpr int kExactGate = 12;
/// solve_exact tabulates all 2^n subsets; it refuses above this even when overridden.
inline constexpr int kExactHardLimit = 20;

struct ExactOptions {
    unsigned worker_count = 1;
    bool scale_override = false;
    bool all_orderings = false;
    /// Keep only the best `limit` solutions; 0 keeps every feasible one.
    std::size_t limit = 0;
};

/// Lexicographically least valid canonical ordering of `members`, if any.
/// Depth-first over positions, abandoning a prefix once any class column has
/// risen after falling.
std::optional<Ordering> least_valid_ordering(const OrderingEvaluator& eval,
                                             std::span<const int> members);

/// Every valid canonical ordering of `members`, lexicographic.
std::vector<Ordering> valid_orderings(const OrderingEvaluator& eval,
                                      std::span<const int> members);

/// Every partition meeting `cons` whose groups each admit a valid ordering,
/// ranked by (group count, singleton count, restricted-growth string). Each
/// group reports its least valid canonical ordering.
/// Throws ScaleRefused above kExactGate without override (and always above
/// kExactHardLimit), std::invalid_argument on bad constraints.
std::vector<GroupedSolution> solve_exact(const AssemblageMatrix& matrix,
                                         const UnimodalityCriterion& criterion,
                                         const MultigroupConstraints& cons = {},
                                         const ExactOptions& options = {});

/// Greedy agglomeration: seed with the valid triple ordering that has the most
/// valid single insertions, grow it one insertion at a time while it stays
/// valid, remove it, repeat. Leftovers without a valid triple are paired off
/// in index order (an odd one out stays single). Group size and count
/// constraints are not enforced here.
GroupedSolution solve_agglomerative(const AssemblageMatrix& matrix,
                                    const UnimodalityCriterion& criterion,
                                    const MultigroupConstraints& cons = {});

} // namespace seriagraph
