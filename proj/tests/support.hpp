#pragma once

// Instance generators and brute-force oracles shared by the unit and
// acceptance suites. Nothing here calls the library's evaluation code.

#include "seriagraph/model.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace seriagraph::testing {

inline AssemblageMatrix make_matrix(const std::vector<std::vector<std::int64_t>>& rows)
{
    CountMatrix c(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.front().size()));
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
        ids.push_back("A" + std::to_string(i));
    }
    return AssemblageMatrix(std::move(ids), std::move(c));
}

/// Peak-enumeration check: some index p has every step before it weakly
/// rising and every step from it weakly falling. Frequencies are compared
/// exactly as fractions count/total.
inline bool oracle_column_unimodal(const AssemblageMatrix& m, const std::vector<int>& order, int cls)
{
    auto less = [&](int a, int b) {  // freq(a) < freq(b)
        return static_cast<__int128>(m.counts()(a, cls)) * m.row_total(b) <
               static_cast<__int128>(m.counts()(b, cls)) * m.row_total(a);
    };
    const int len = static_cast<int>(order.size());
    for (int p = 0; p < std::max(len, 1); ++p) {
        bool ok = true;
        for (int i = 0; i + 1 < len && ok; ++i) {
            if (i < p) {
                ok = !less(order[i + 1], order[i]);
            } else {
                ok = !less(order[i], order[i + 1]);
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

inline bool oracle_valid(const AssemblageMatrix& m, const std::vector<int>& order)
{
    for (int c = 0; c < m.k(); ++c) {
        if (!oracle_column_unimodal(m, order, c)) {
            return false;
        }
    }
    return true;
}

/// All n! permutations of `members`, filtered by the oracle, mirror pairs
/// collapsed to the representative with first < last.
inline std::set<std::vector<int>> oracle_valid_set(const AssemblageMatrix& m,
                                                   std::vector<int> members)
{
    std::set<std::vector<int>> out;
    std::sort(members.begin(), members.end());
    do {
        if (oracle_valid(m, members)) {
            auto p = members;
            if (p.size() > 1 && p.front() > p.back()) {
                std::reverse(p.begin(), p.end());
            }
            out.insert(p);
        }
    } while (std::next_permutation(members.begin(), members.end()));
    return out;
}

inline std::set<std::vector<int>> oracle_valid_set(const AssemblageMatrix& m)
{
    std::vector<int> all(static_cast<std::size_t>(m.n()));
    std::iota(all.begin(), all.end(), 0);
    return oracle_valid_set(m, all);
}

struct Planted {
    AssemblageMatrix matrix;
    /// Row indices in planted (canonical) order.
    std::vector<int> order;
};

/// Rows are Bernstein basis values at increasing points t = p/q, scaled by
/// q^(k-1) so they are exact integers summing to q^(k-1). Every column is then
/// unimodal along increasing t, and the two end columns are strictly
/// monotone, so the planted order and its mirror are the only valid ones.
/// Rows are shuffled.
inline Planted planted_single(int n, int k, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const std::int64_t q = 100;
    std::vector<std::int64_t> pts(static_cast<std::size_t>(q - 1));
    std::iota(pts.begin(), pts.end(), 1);
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(static_cast<std::size_t>(n));
    std::sort(pts.begin(), pts.end());

    std::vector<int> row_of(static_cast<std::size_t>(n));
    std::iota(row_of.begin(), row_of.end(), 0);
    std::shuffle(row_of.begin(), row_of.end(), rng);

    auto ipow = [](std::int64_t b, int e) {
        std::int64_t r = 1;
        while (e-- > 0) {
            r *= b;
        }
        return r;
    };
    auto binom = [](int a, int b) {
        std::int64_t r = 1;
        for (int i = 1; i <= b; ++i) {
            r = r * (a - b + i) / i;
        }
        return r;
    };

    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n));
    const int d = k - 1;
    for (int pos = 0; pos < n; ++pos) {
        const std::int64_t p = pts[static_cast<std::size_t>(pos)];
        std::vector<std::int64_t> r;
        for (int j = 0; j <= d; ++j) {
            r.push_back(binom(d, j) * ipow(p, j) * ipow(q - p, d - j));
        }
        rows[static_cast<std::size_t>(row_of[static_cast<std::size_t>(pos)])] = std::move(r);
    }
    std::vector<int> order(row_of.begin(), row_of.end());
    if (order.front() > order.back()) {
        std::reverse(order.begin(), order.end());
    }
    return {make_matrix(rows), order};
}

struct PlantedGroups {
    AssemblageMatrix matrix;
    /// Members of group A and group B, each in planted order.
    std::vector<int> a_order;
    std::vector<int> b_order;
};

/// Two planted groups with disjoint dominant classes, every row totalling
/// 1000. Classes 0-1 carry group A (opposite monotone trends), 2-3 carry B.
/// Classes 4-5 are small monotone trends inside A and large inside B; 6-7 the
/// reverse. Any group holding two members of one planted group and one of
/// the other has no valid ordering, so the planted pair of groups is the only
/// feasible two-group split and no single group works.
inline PlantedGroups planted_two_groups(int size_a, int size_b, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const int n = size_a + size_b;
    std::vector<int> row_of(static_cast<std::size_t>(n));
    std::iota(row_of.begin(), row_of.end(), 0);
    std::shuffle(row_of.begin(), row_of.end(), rng);

    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n));
    auto build = [&](int size, int offset, int dom, int small, int large) {
        std::uniform_int_distribution<int> step(10, 40);
        std::uniform_int_distribution<int> tstep(1, 3);
        std::int64_t d = 250 - step(rng);
        std::int64_t t = 5;
        std::vector<int> order;
        for (int i = 0; i < size; ++i) {
            d += step(rng);
            t += tstep(rng);
            std::vector<std::int64_t> r(8, 0);
            r[dom] = d;
            r[dom + 1] = 760 - d;
            r[small] = t;
            r[small + 1] = 40 - t;
            r[large] = 100;
            r[large + 1] = 100;
            const int row = row_of[static_cast<std::size_t>(offset + i)];
            rows[static_cast<std::size_t>(row)] = std::move(r);
            order.push_back(row);
        }
        return order;
    };
    auto a = build(size_a, 0, 0, 4, 6);
    auto b = build(size_b, size_a, 2, 6, 4);
    return {make_matrix(rows), a, b};
}

/// Uniform random counts in [0, max_count], rows re-drawn until non-empty.
inline AssemblageMatrix random_matrix(int n, int k, std::int64_t max_count, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> dist(0, max_count);
    std::vector<std::vector<std::int64_t>> rows;
    while (static_cast<int>(rows.size()) < n) {
        std::vector<std::int64_t> r(static_cast<std::size_t>(k));
        for (auto& v : r) {
            v = dist(rng);
        }
        if (std::accumulate(r.begin(), r.end(), std::int64_t{0}) > 0) {
            rows.push_back(std::move(r));
        }
    }
    return make_matrix(rows);
}

/// A planted Bernstein instance with each count jittered by up to +-jitter
/// percent, so that valid sets are non-trivial but not always the planted one.
inline AssemblageMatrix noisy_planted(int n, int k, int jitter_percent, std::mt19937_64& rng)
{
    const auto base = planted_single(n, k, rng());
    std::uniform_int_distribution<int> pct(-jitter_percent, jitter_percent);
    std::vector<std::vector<std::int64_t>> rows;
    for (int i = 0; i < base.matrix.n(); ++i) {
        std::vector<std::int64_t> r;
        for (int j = 0; j < k; ++j) {
            const std::int64_t c = base.matrix.counts()(i, j);
            r.push_back(std::max<std::int64_t>(0, c + c * pct(rng) / 100));
        }
        if (std::accumulate(r.begin(), r.end(), std::int64_t{0}) == 0) {
            r[0] = 1;
        }
        rows.push_back(std::move(r));
    }
    return make_matrix(rows);
}

} // namespace seriagraph::testing
