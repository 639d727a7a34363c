#include "seriagraph/multigroup.hpp"

#include "seriagraph/combinatorics.hpp"
#include "seriagraph/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>

namespace seriagraph {

Partition Partition::from_rgs(std::vector<int> rgs)
{
    int max_label = -1;
    for (int label : rgs) {
        if (label < 0 || label > max_label + 1) {
            throw std::invalid_argument("not a restricted-growth string");
        }
        max_label = std::max(max_label, label);
    }
    return Partition{std::move(rgs), max_label + 1};
}

std::vector<std::vector<int>> Partition::groups() const
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(group_count));
    for (std::size_t i = 0; i < rgs.size(); ++i) {
        out[static_cast<std::size_t>(rgs[i])].push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<Partition> enumerate_partitions(int n, int m)
{
    if (n < 1 || m < 1 || m > n) {
        throw std::invalid_argument("enumerate_partitions requires 1 <= m <= n");
    }
    std::vector<Partition> out;
    for_each_rgs(n, m, [&](const std::vector<int>& rgs, int used) {
        out.push_back(Partition{rgs, used});
    });
    return out;
}

std::vector<Partition> enumerate_all_partitions(int n)
{
    if (n < 1) {
        throw std::invalid_argument("enumerate_all_partitions requires n >= 1");
    }
    std::vector<Partition> out;
    for_each_rgs(n, 0, [&](const std::vector<int>& rgs, int used) {
        out.push_back(Partition{rgs, used});
    });
    return out;
}

namespace {

// Depth-first construction of canonical orderings of `members` in
// lexicographic order. A prefix survives while no class column has risen
// after falling; `emit` returns false to stop.
template <typename Emit>
void search_orderings(const OrderingEvaluator& eval, std::span<const int> members, Emit&& emit)
{
    std::vector<int> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    const auto size = sorted.size();
    if (size == 0) {
        return;
    }
    const auto k = static_cast<std::size_t>(eval.matrix().k());

    std::vector<int> perm;
    perm.reserve(size);
    std::vector<char> used(size, 0);
    // descending[d * k + c]: class c has fallen somewhere in the first d+1 entries.
    std::vector<char> descending(size * k, 0);
    bool stop = false;

    auto rec = [&](auto& self, std::size_t depth) -> void {
        if (depth == size) {
            if (perm.size() < 2 || perm.front() < perm.back()) {
                stop = !emit(std::as_const(perm));
            }
            return;
        }
        for (std::size_t idx = 0; idx < size && !stop; ++idx) {
            if (used[idx]) {
                continue;
            }
            const int row = sorted[idx];
            if (depth > 0) {
                // The last entry must exceed the first.
                const int first = perm.front();
                bool tail_ok = depth + 1 == size && row > first;
                for (std::size_t j = 0; j < size && !tail_ok && depth + 1 < size; ++j) {
                    tail_ok = !used[j] && j != idx && sorted[j] > first;
                }
                if (!tail_ok) {
                    continue;
                }
                bool ok = true;
                const int prev = perm.back();
                for (std::size_t c = 0; c < k; ++c) {
                    const char was_desc = descending[(depth - 1) * k + c];
                    const int d = eval.direction(static_cast<int>(c), prev, row);
                    if (d > 0 && was_desc) {
                        ok = false;
                        break;
                    }
                    descending[depth * k + c] = static_cast<char>(was_desc || d < 0);
                }
                if (!ok) {
                    continue;
                }
            } else {
                std::fill_n(descending.begin(), k, 0);
            }
            used[idx] = 1;
            perm.push_back(row);
            self(self, depth + 1);
            perm.pop_back();
            used[idx] = 0;
        }
    };
    rec(rec, 0);
}

using Mask = std::uint64_t;

Mask mask_of(std::span<const int> members)
{
    Mask m = 0;
    for (int r : members) {
        m |= Mask{1} << r;
    }
    return m;
}

std::vector<int> members_of(Mask mask)
{
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

struct Candidate {
    std::uint8_t groups = 0;
    std::uint8_t singletons = 0;
    std::array<std::uint8_t, kExactHardLimit> rgs{};

    auto key() const { return std::tie(groups, singletons, rgs); }
    bool operator<(const Candidate& o) const { return key() < o.key(); }
};

void check_constraints(const MultigroupConstraints& cons)
{
    if (cons.min_group_size < 1) {
        throw std::invalid_argument("min_group_size must be at least 1");
    }
    if (cons.max_groups && *cons.max_groups < 1) {
        throw std::invalid_argument("max_groups must be at least 1");
    }
}

template <typename Fn>
void run_workers(unsigned workers, Fn&& fn)
{
    if (workers <= 1) {
        fn(0U);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&fn, w] { fn(w); });
    }
}

} // namespace

std::optional<Ordering> least_valid_ordering(const OrderingEvaluator& eval,
                                             std::span<const int> members)
{
    std::optional<Ordering> found;
    search_orderings(eval, members, [&](const std::vector<int>& perm) {
        found = Ordering{perm};
        return false;
    });
    return found;
}

std::vector<Ordering> valid_orderings(const OrderingEvaluator& eval, std::span<const int> members)
{
    std::vector<Ordering> out;
    search_orderings(eval, members, [&](const std::vector<int>& perm) {
        out.push_back(Ordering{perm});
        return true;
    });
    return out;
}

std::vector<GroupedSolution> solve_exact(const AssemblageMatrix& matrix,
                                         const UnimodalityCriterion& criterion,
                                         const MultigroupConstraints& cons,
                                         const ExactOptions& options)
{
    check_constraints(cons);
    const int n = matrix.n();
    if (n > kExactHardLimit || (n > kExactGate && !options.scale_override)) {
        const auto partitions = all_partitions_count(static_cast<unsigned>(n));
        const auto est = estimate_time(partitions);
        std::string msg = "refusing exact multigroup search over " + format_count(partitions) +
                          " partitions of " + std::to_string(n) + " assemblages (estimated " +
                          format_decimal(est.seconds) + " s = " + format_decimal(est.years) +
                          " years on 64 cores at 5 ms per partition); ";
        msg += n > kExactHardLimit ? "the exact solver supports at most " +
                                         std::to_string(kExactHardLimit) + " assemblages"
                                   : "pass the override flag to run anyway";
        throw ScaleRefused(msg);
    }

    const OrderingEvaluator eval(matrix, criterion);
    const unsigned workers = std::max(1U, options.worker_count);

    // Feasibility of every subset that could be a group.
    const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<char> feasible(static_cast<std::size_t>(full) + 1, 0);
    run_workers(workers, [&](unsigned w) {
        for (Mask s = 1 + w; s <= full; s += workers) {
            if (std::popcount(s) < cons.min_group_size) {
                continue;
            }
            const auto members = members_of(s);
            feasible[s] = least_valid_ordering(eval, members).has_value() ? 1 : 0;
        }
    });

    // Split the partition stream by restricted-growth prefix.
    const int prefix_len = std::min(n, 5);
    std::vector<std::vector<int>> prefixes;
    for_each_rgs(prefix_len, 0, [&](const std::vector<int>& p, int) { prefixes.push_back(p); });

    const int max_groups = cons.max_groups.value_or(n);
    std::vector<std::vector<Candidate>> found(workers);
    run_workers(workers, [&](unsigned w) {
        std::vector<int> rgs(static_cast<std::size_t>(n));
        std::vector<Mask> group_mask(static_cast<std::size_t>(n) + 1);
        auto finish = [&](int used) {
            int singletons = 0;
            for (int g = 0; g < used; ++g) {
                const Mask gm = group_mask[g];
                if (std::popcount(gm) < cons.min_group_size || !feasible[gm]) {
                    return;
                }
                singletons += std::popcount(gm) == 1 ? 1 : 0;
            }
            Candidate c;
            c.groups = static_cast<std::uint8_t>(used);
            c.singletons = static_cast<std::uint8_t>(singletons);
            for (int i = 0; i < n; ++i) {
                c.rgs[i] = static_cast<std::uint8_t>(rgs[i]);
            }
            found[w].push_back(c);
        };
        auto rec = [&](auto& self, int i, int used) -> void {
            if (i == n) {
                finish(used);
                return;
            }
            for (int label = 0; label <= used && label < max_groups; ++label) {
                const Mask bit = Mask{1} << i;
                rgs[i] = label;
                group_mask[label] |= bit;
                self(self, i + 1, label == used ? used + 1 : used);
                group_mask[label] &= ~bit;
            }
        };
        for (std::size_t p = w; p < prefixes.size(); p += workers) {
            std::fill(group_mask.begin(), group_mask.end(), 0);
            int used = 0;
            for (int i = 0; i < prefix_len; ++i) {
                rgs[i] = prefixes[p][i];
                group_mask[rgs[i]] |= Mask{1} << i;
                used = std::max(used, rgs[i] + 1);
            }
            if (used > max_groups) {
                continue;
            }
            rec(rec, prefix_len, used);
        }
    });

    std::vector<Candidate> all;
    for (auto& f : found) {
        all.insert(all.end(), f.begin(), f.end());
        f = {};
    }
    if (options.limit > 0 && options.limit < all.size()) {
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(options.limit),
                          all.end());
        all.resize(options.limit);
    } else {
        std::sort(all.begin(), all.end());
    }

    std::map<Mask, SolvedGroup> solved;
    auto solve_group = [&](const std::vector<int>& members) -> const SolvedGroup& {
        const Mask m = mask_of(members);
        auto it = solved.find(m);
        if (it != solved.end()) {
            return it->second;
        }
        SolvedGroup g;
        g.members = members;
        g.ordering = *least_valid_ordering(eval, members);
        g.report = eval.evaluate(g.ordering.perm);
        if (options.all_orderings) {
            g.all_orderings = valid_orderings(eval, members);
        }
        return solved.emplace(m, std::move(g)).first->second;
    };

    std::vector<GroupedSolution> out;
    out.reserve(all.size());
    for (const auto& c : all) {
        GroupedSolution sol;
        sol.partition = Partition{std::vector<int>(c.rgs.begin(), c.rgs.begin() + n), c.groups};
        for (const auto& members : sol.partition.groups()) {
            sol.groups.push_back(solve_group(members));
        }
        out.push_back(std::move(sol));
    }
    return out;
}

namespace {

std::vector<int> inserted(const std::vector<int>& perm, int row, std::size_t pos)
{
    std::vector<int> out;
    out.reserve(perm.size() + 1);
    out.insert(out.end(), perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(pos));
    out.push_back(row);
    out.insert(out.end(), perm.begin() + static_cast<std::ptrdiff_t>(pos), perm.end());
    return out;
}

} // namespace

GroupedSolution solve_agglomerative(const AssemblageMatrix& matrix,
                                    const UnimodalityCriterion& criterion,
                                    const MultigroupConstraints& cons)
{
    check_constraints(cons);
    const OrderingEvaluator eval(matrix, criterion);
    UnimodalityCriterion strict = criterion;
    strict.mode = UnimodalityCriterion::Mode::strict;
    const OrderingEvaluator strict_eval(matrix, strict);

    std::vector<int> remaining(static_cast<std::size_t>(matrix.n()));
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::vector<int>> groups;

    auto without = [](const std::vector<int>& from, const std::vector<int>& drop) {
        std::vector<int> out;
        for (int r : from) {
            if (std::find(drop.begin(), drop.end(), r) == drop.end()) {
                out.push_back(r);
            }
        }
        return out;
    };

    while (!remaining.empty()) {
        std::optional<std::vector<int>> seed;
        long best_extensions = -1;
        const std::size_t rn = remaining.size();
        for (std::size_t i = 0; i < rn; ++i) {
            for (std::size_t j = i + 1; j < rn; ++j) {
                for (std::size_t l = j + 1; l < rn; ++l) {
                    const int a = remaining[i];
                    const int b = remaining[j];
                    const int c = remaining[l];
                    for (const auto& trial : {std::vector<int>{a, b, c}, std::vector<int>{a, c, b},
                                              std::vector<int>{b, a, c}}) {
                        if (!eval.is_valid(trial)) {
                            continue;
                        }
                        long extensions = 0;
                        for (int u : remaining) {
                            if (u == a || u == b || u == c) {
                                continue;
                            }
                            for (std::size_t pos = 0; pos <= trial.size(); ++pos) {
                                extensions += eval.is_valid(inserted(trial, u, pos)) ? 1 : 0;
                            }
                        }
                        if (extensions > best_extensions) {
                            best_extensions = extensions;
                            seed = trial;
                        }
                    }
                }
            }
        }

        if (!seed) {
            for (std::size_t i = 0; i < rn; i += 2) {
                if (i + 1 < rn) {
                    groups.push_back({remaining[i], remaining[i + 1]});
                } else {
                    groups.push_back({remaining[i]});
                }
            }
            break;
        }

        std::vector<int> current = *seed;
        auto pool = without(remaining, current);
        for (;;) {
            std::optional<std::tuple<double, int, std::size_t>> best;
            for (int u : pool) {
                for (std::size_t pos = 0; pos <= current.size(); ++pos) {
                    const auto trial = inserted(current, u, pos);
                    if (!eval.is_valid(trial)) {
                        continue;
                    }
                    const auto key = std::make_tuple(
                        strict_eval.score(trial, std::numeric_limits<double>::infinity()), u, pos);
                    if (!best || key < *best) {
                        best = key;
                    }
                }
            }
            if (!best) {
                break;
            }
            const auto [score, u, pos] = *best;
            current = canonicalize(Ordering{inserted(current, u, pos)}).perm;
            pool = without(pool, {u});
        }
        remaining = without(remaining, current);
        groups.push_back(std::move(current));
    }

    // Label groups by their smallest member so the labels form a
    // restricted-growth string.
    std::sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) {
        return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
    });

    GroupedSolution sol;
    std::vector<int> rgs(static_cast<std::size_t>(matrix.n()), 0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        SolvedGroup sg;
        sg.members = groups[g];
        std::sort(sg.members.begin(), sg.members.end());
        for (int r : sg.members) {
            rgs[static_cast<std::size_t>(r)] = static_cast<int>(g);
        }
        sg.ordering = canonicalize(Ordering{groups[g]});
        sg.report = eval.evaluate(sg.ordering.perm);
        sol.groups.push_back(std::move(sg));
    }
    sol.partition = Partition::from_rgs(std::move(rgs));
    return sol;
}

} // namespace seriagraph
