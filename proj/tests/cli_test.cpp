#include "seriagraph/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace seriagraph;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path tmp_dir()
{
    const fs::path dir = SERIAGRAPH_TMP;
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Run run(const std::string& args)
{
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    const auto base = tmp_dir() / info->name();
    const auto out = base.string() + ".stdout";
    const auto err = base.string() + ".stderr";
    const std::string cmd =
        std::string(SERIAGRAPH_CLI) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_csv(const std::string& name, const AssemblageMatrix& m)
{
    const auto p = tmp_dir() / name;
    std::ofstream out(p);
    write_assemblage_csv(out, m);
    return p;
}

fs::path write_text(const std::string& name, const std::string& text)
{
    const auto p = tmp_dir() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST(Cli, CountSingleCell)
{
    const auto r = run("count 20 10");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("5.9e+12"), std::string::npos) << r.out;
}

TEST(Cli, CountTables)
{
    const auto one = run("count --table 1");
    EXPECT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("3.1e+09"), std::string::npos);
    const auto three = run("count --table 3 --format json");
    EXPECT_EQ(three.code, 0);
    EXPECT_TRUE(nlohmann::json::accept(three.out));
}

TEST(Cli, EstimateExitCodes)
{
    EXPECT_EQ(run("estimate 8").code, 0);
    EXPECT_EQ(run("estimate 13").code, 0);
    const auto big = run("estimate 14");
    EXPECT_EQ(big.code, 3);
    EXPECT_NE(big.out.find("infeasible"), std::string::npos) << big.out;
}

TEST(Cli, BadArgumentsAreInputErrors)
{
    EXPECT_EQ(run("count --table 9").code, 2);
    EXPECT_EQ(run("estimate 0").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("seriate " + (tmp_dir() / "missing.csv").string()).code, 2);
}

TEST(Cli, SeriatePlanted)
{
    const auto planted = seriagraph::testing::planted_single(7, 4, 11);
    const auto csv = write_csv("planted7.csv", planted.matrix);
    const auto doc_path = tmp_dir() / "planted7.json";
    const auto r = run("seriate " + csv.string() + " --out " + doc_path.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse_document(slurp(doc_path));
    ASSERT_EQ(doc.orderings.size(), 1U);
    EXPECT_EQ(doc.orderings[0].ordering.perm, planted.order);
    EXPECT_EQ(doc.instance_digest, instance_digest(planted.matrix));

    const auto art = run("diagram " + doc_path.string() + " --width 10");
    EXPECT_EQ(art.code, 0) << art.err;
    EXPECT_NE(art.out.find("group 1 (7 assemblages)"), std::string::npos);
    EXPECT_EQ(run("diagram " + doc_path.string() + " --solution 2").code, 2);
}

TEST(Cli, SeriateTextAndBootstrap)
{
    const auto planted = seriagraph::testing::planted_single(5, 3, 4);
    const auto csv = write_csv("planted5.csv", planted.matrix);
    const auto r = run("seriate " + csv.string() +
                       " --criterion bootstrap --replicates 200 --seed 3 --format text");
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.err.find("warning"), std::string::npos);
    EXPECT_EQ(run("seriate " + csv.string() + " --criterion bootstrap --replicates 50").code, 2);
    EXPECT_EQ(run("seriate " + csv.string() + " --criterion bootstrap --alpha 1.5").code, 2);
}

TEST(Cli, SeriateNegativeCountNamesCell)
{
    const auto csv = write_text("negative.csv", "id,a,b\nX,1,2\nY,3,-4\n");
    const auto r = run("seriate " + csv.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 3, column 3"), std::string::npos) << r.err;
}

TEST(Cli, SeriateRefusedAboveGate)
{
    std::mt19937_64 rng(3);
    const auto csv = write_csv("fourteen.csv", seriagraph::testing::random_matrix(14, 3, 9, rng));
    const auto r = run("seriate " + csv.string());
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("4.4e+10"), std::string::npos) << r.err;
}

TEST(Cli, SeriateNoValidOrdering)
{
    // Class 0 peaks at A0 and A2 while class 1 forces A1 between them.
    const auto m = seriagraph::testing::make_matrix(
        {{9, 1, 0}, {1, 1, 8}, {9, 0, 1}, {1, 9, 0}});
    std::vector<int> all{0, 1, 2, 3};
    if (!seriagraph::testing::oracle_valid_set(m, all).empty()) {
        GTEST_SKIP() << "instance unexpectedly seriates";
    }
    const auto csv = write_csv("invalid.csv", m);
    EXPECT_EQ(run("seriate " + csv.string()).code, 4);
    EXPECT_EQ(run("seriate " + csv.string() + " --mode best-scoring").code, 4);
}

TEST(Cli, MultigroupExactAndHeuristic)
{
    const auto planted = seriagraph::testing::planted_two_groups(4, 3, 5);
    const auto csv = write_csv("two.csv", planted.matrix);
    const auto exact_path = tmp_dir() / "two_exact.json";
    const auto r = run("multigroup " + csv.string() + " --limit 1 --out " + exact_path.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse_document(slurp(exact_path));
    ASSERT_EQ(doc.solutions.size(), 1U);
    EXPECT_EQ(doc.solutions[0].partition.group_count, 2);

    const auto h = run("multigroup " + csv.string() + " --mode heuristic");
    ASSERT_EQ(h.code, 0) << h.err;
    const auto hdoc = parse_document(h.out);
    ASSERT_EQ(hdoc.solutions.size(), 1U);
    EXPECT_EQ(hdoc.solutions[0].partition, doc.solutions[0].partition);

    const auto art = run("diagram " + exact_path.string());
    EXPECT_EQ(art.code, 0);
    EXPECT_NE(art.out.find("group 2"), std::string::npos);
}

TEST(Cli, MultigroupSingleAssemblage)
{
    const auto csv = write_text("single.csv", "id,a,b\nonly,2,3\n");
    const auto r = run("multigroup " + csv.string());
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = parse_document(r.out);
    ASSERT_EQ(doc.solutions.size(), 1U);
    EXPECT_EQ(doc.solutions[0].partition.rgs, (std::vector<int>{0}));
}

TEST(Cli, MultigroupScaleRefused)
{
    std::mt19937_64 rng(8);
    const auto csv = write_csv("thirteen.csv", seriagraph::testing::random_matrix(13, 3, 9, rng));
    EXPECT_EQ(run("multigroup " + csv.string()).code, 3);
}
