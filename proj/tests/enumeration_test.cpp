#include "seriagraph/enumeration.hpp"
#include "seriagraph/errors.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace seriagraph;
using seriagraph::testing::make_matrix;

namespace {

EnumerationRequest request(const AssemblageMatrix& m, unsigned workers = 1,
                           EnumerationRequest::Mode mode = EnumerationRequest::Mode::all_valid)
{
    return EnumerationRequest{m, {}, mode, workers, false};
}

std::set<std::vector<int>> as_set(const EnumerationResult& r)
{
    std::set<std::vector<int>> s;
    for (const auto& x : r.solutions) {
        s.insert(x.ordering.perm);
    }
    return s;
}

} // namespace

TEST(CanonicalPermutations, SmallStreams)
{
    const auto three = canonical_permutations(3);
    ASSERT_EQ(three.size(), 3U);
    EXPECT_EQ(three[0].perm, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(three[1].perm, (std::vector<int>{0, 2, 1}));
    EXPECT_EQ(three[2].perm, (std::vector<int>{1, 0, 2}));
    EXPECT_EQ(canonical_permutations(4).size(), 12U);
    const auto one = canonical_permutations(1);
    ASSERT_EQ(one.size(), 1U);
    EXPECT_EQ(one[0].perm, (std::vector<int>{0}));
    EXPECT_EQ(canonical_permutations(2).size(), 1U);
}

TEST(CanonicalPermutations, CountsOrderAndUniqueness)
{
    for (int n = 1; n <= 9; ++n) {
        std::size_t count = 0;
        std::vector<int> prev;
        std::set<std::vector<int>> seen;
        for_each_canonical_permutation(n, [&](const std::vector<int>& p) {
            ++count;
            EXPECT_TRUE(n == 1 || p.front() < p.back());
            EXPECT_TRUE(prev.empty() || prev < p);
            if (n <= 7) {
                auto mirror = p;
                std::reverse(mirror.begin(), mirror.end());
                EXPECT_EQ(seen.count(mirror), 0U);
                seen.insert(p);
            }
            prev = p;
            return true;
        });
        EXPECT_EQ(BigCount(count), unique_seriation_count(static_cast<unsigned>(n))) << n;
    }
}

TEST(CanonicalPermutations, BlocksCoverStream)
{
    for (int n = 2; n <= 7; ++n) {
        std::vector<std::vector<int>> by_blocks;
        for (auto [a, b] : prefix_blocks(n)) {
            EXPECT_GT(for_each_in_prefix_block(n, a, b,
                                               [&](const std::vector<int>& p) {
                                                   by_blocks.push_back(p);
                                                   return true;
                                               }),
                      0U);
        }
        std::vector<std::vector<int>> direct;
        for (const auto& o : canonical_permutations(n)) {
            direct.push_back(o.perm);
        }
        EXPECT_EQ(by_blocks, direct) << n;
    }
}

TEST(SolveSingle, PlantedOrderRecovered)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto planted = seriagraph::testing::planted_single(6, 4, seed);
        const auto r = solve_single(request(planted.matrix, 2));
        EXPECT_EQ(as_set(r).count(planted.order), 1U);
        EXPECT_EQ(r.tested_count, 360);
        for (const auto& s : r.solutions) {
            EXPECT_TRUE(s.report.valid);
        }
    }
}

TEST(SolveSingle, TestedCountIsHalfFactorial)
{
    const auto m = make_matrix({{1, 2}, {3, 1}, {2, 2}, {5, 1}});
    EXPECT_EQ(solve_single(request(m)).tested_count, 12);
}

TEST(SolveSingle, SingleAssemblage)
{
    const auto m = make_matrix({{4, 1, 0}});
    const auto r = solve_single(request(m, 4));
    ASSERT_EQ(r.solutions.size(), 1U);
    EXPECT_EQ(r.solutions[0].ordering.perm, (std::vector<int>{0}));
    EXPECT_EQ(r.solutions[0].report.score, 0.0);
    EXPECT_EQ(r.tested_count, 1);
}

TEST(SolveSingle, MatchesNaiveOracle)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + trial % 5;
        const auto m = trial % 3 == 0 ? seriagraph::testing::random_matrix(n, 3, 8, rng)
                                      : seriagraph::testing::noisy_planted(n, 4, 25, rng);
        const auto expected = seriagraph::testing::oracle_valid_set(m);
        EXPECT_EQ(as_set(solve_single(request(m, 3))), expected) << trial;
        EXPECT_EQ(as_set(solve_single_reference(request(m))), expected) << trial;
    }
}

TEST(SolveSingle, WorkerInvariance)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        const auto m = seriagraph::testing::noisy_planted(8, 4, 30, rng);
        for (auto mode : {EnumerationRequest::Mode::all_valid, EnumerationRequest::Mode::best_scoring}) {
            const auto one = solve_single(request(m, 1, mode));
            for (unsigned w : {2U, 8U}) {
                const auto many = solve_single(request(m, w, mode));
                EXPECT_EQ(many.solutions, one.solutions);
                EXPECT_EQ(many.tested_count, one.tested_count);
            }
        }
    }
}

TEST(SolveSingle, BestScoringIsMinimal)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = seriagraph::testing::random_matrix(7, 4, 20, rng);
        const auto r = solve_single(request(m, 2, EnumerationRequest::Mode::best_scoring));
        ASSERT_FALSE(r.solutions.empty());
        const double best = r.solutions.front().report.score;
        for (const auto& s : r.solutions) {
            EXPECT_EQ(s.report.score, best);
        }
        std::vector<int> p{0, 1, 2, 3, 4, 5, 6};
        for (int k = 0; k < 200; ++k) {
            std::shuffle(p.begin(), p.end(), rng);
            // The score reads the order in one direction, so compare canonical forms.
            EXPECT_LE(best, evaluate_ordering(m, canonicalize(Ordering{p}), {}).score);
        }
    }
}

TEST(SolveSingle, GateRefusesLargeInstances)
{
    std::mt19937_64 rng(1);
    const auto m = seriagraph::testing::random_matrix(14, 3, 9, rng);
    try {
        solve_single(request(m));
        FAIL() << "expected FeasibilityRefused";
    } catch (const FeasibilityRefused& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("4.4e+10"), std::string::npos) << msg;
        EXPECT_NE(msg.find("3.4e+06 s"), std::string::npos) << msg;
    }
}

TEST(FeasibilityReport, Tiers)
{
    const auto ten = feasibility_report(10);
    EXPECT_EQ(format_decimal(ten.estimate.seconds), "1.4e+02");
    EXPECT_EQ(ten.tier, FeasibilityReport::Tier::comfortable);

    const auto twenty = feasibility_report(20);
    EXPECT_EQ(format_decimal(twenty.estimate.years), "3e+06");
    EXPECT_EQ(twenty.tier, FeasibilityReport::Tier::infeasible);

    const auto thirteen = feasibility_report(13);
    EXPECT_EQ(format_decimal(thirteen.estimate.years), "0.0077");
    EXPECT_EQ(thirteen.tier, FeasibilityReport::Tier::limit);
    EXPECT_NE(thirteen.advisory.find("model-based"), std::string::npos);

    EXPECT_THROW(feasibility_report(0), std::invalid_argument);
}
