// seriagraph: counting, feasibility estimates, single-group and multigroup
// frequency seriation, and text battleship diagrams.

#include "seriagraph/combinatorics.hpp"
#include "seriagraph/diagram.hpp"
#include "seriagraph/enumeration.hpp"
#include "seriagraph/errors.hpp"
#include "seriagraph/io.hpp"
#include "seriagraph/multigroup.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace sg = seriagraph;

namespace {

enum ExitCode : int {
    kOk = 0,
    kInputError = 2,
    kRefused = 3,
    kNoSolution = 4,
};

struct CriterionFlags {
    std::string mode = "strict";
    double alpha = 0.05;
    unsigned replicates = 1000;
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--criterion", mode, "Unimodality test")
            ->check(CLI::IsMember({"strict", "bootstrap"}))
            ->capture_default_str();
        cmd->add_option("--alpha", alpha, "Bootstrap interval tail mass")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        cmd->add_option("--replicates", replicates, "Bootstrap replicates (>= 100)")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "Bootstrap seed")->capture_default_str();
    }

    sg::UnimodalityCriterion build() const
    {
        sg::UnimodalityCriterion c;
        c.mode = mode == "bootstrap" ? sg::UnimodalityCriterion::Mode::bootstrap
                                     : sg::UnimodalityCriterion::Mode::strict;
        c.alpha = alpha;
        c.replicates = replicates;
        c.seed = seed;
        if (c.mode == sg::UnimodalityCriterion::Mode::bootstrap &&
            !sg::validate(c.bootstrap_config())) {
            std::cerr << "warning: fewer than " << sg::kRecommendedReplicates
                      << " bootstrap replicates\n";
        }
        return c;
    }
};

struct BudgetFlags {
    unsigned cores = 64;
    double per_test = 0.005;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--cores", cores, "Cores in the hypothetical cluster")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd->add_option("--per-test-seconds", per_test, "Seconds to test one solution")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }

    sg::ComputeBudget build() const { return {cores, per_test}; }
};

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw sg::ParseError("cannot write '" + out_path + "'", 0, 0);
    }
    out << text;
}

std::string render(const sg::SolutionDocument& doc, const std::string& format)
{
    return format == "json" ? sg::write_document(doc) : sg::render_text(doc);
}

int cmd_count(unsigned n, unsigned m, int table, const sg::ComputeBudget& budget,
              const std::string& format)
{
    if (table != 0) {
        sg::TextTable t = table == 1   ? sg::seriation_count_table(budget)
                          : table == 2 ? sg::partition_count_table()
                                       : sg::multigroup_count_table(budget);
        std::cout << (format == "json" ? t.to_json().dump(2) + "\n" : t.render());
        return kOk;
    }
    if (n < 1 || n > sg::StirlingTable::kDefaultCapacity) {
        throw std::invalid_argument("n must lie in 1..512");
    }
    sg::TextTable t;
    if (m != 0) {
        if (m > n) {
            throw std::invalid_argument("m must not exceed n");
        }
        const auto s = sg::stirling2(n, m);
        t.header = {"N", "m", "Partitions", "Exact"};
        t.rows.push_back({std::to_string(n), std::to_string(m), sg::format_count(s), s.str()});
    } else {
        t.header = {"Quantity", "Count", "Exact", "Seconds", "Years"};
        auto add = [&](const std::string& name, const sg::BigCount& c) {
            const auto est = sg::estimate_time(c, budget);
            t.rows.push_back({name, sg::format_count(c), c.str(), sg::format_decimal(est.seconds),
                              sg::format_decimal(est.years)});
        };
        add("unique_seriations", sg::unique_seriation_count(n));
        add("partitions", sg::all_partitions_count(n));
        if (n >= 2) {
            add("multigroup_worst_case", sg::total_multigroup_solutions(n));
        }
    }
    std::cout << (format == "json" ? t.to_json().dump(2) + "\n" : t.render());
    return kOk;
}

int cmd_estimate(int n, const sg::ComputeBudget& budget, const std::string& format)
{
    const auto r = sg::feasibility_report(n, budget);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = n;
        j["solutions"] = r.count.str();
        j["seconds"] = sg::format_decimal(r.estimate.seconds);
        j["years"] = sg::format_decimal(r.estimate.years);
        j["tier"] = sg::to_string(r.tier);
        j["advisory"] = r.advisory;
        std::cout << j.dump(2) << '\n';
    } else {
        sg::TextTable t{{"N", "Seriation Solutions", "Seconds", "Years", "Tier"}, {}};
        t.rows.push_back({std::to_string(n), sg::format_count(r.count),
                          sg::format_decimal(r.estimate.seconds),
                          sg::format_decimal(r.estimate.years), sg::to_string(r.tier)});
        std::cout << t.render() << r.advisory << '\n';
    }
    return r.tier == sg::FeasibilityReport::Tier::infeasible ? kRefused : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deterministic frequency seriation and its combinatorics"};
    app.require_subcommand(1);

    // count
    auto* count = app.add_subcommand("count", "Solution-space counts and time estimates");
    unsigned count_n = 0;
    unsigned count_m = 0;
    int count_table = 0;
    std::string count_format = "text";
    BudgetFlags count_budget;
    count->add_option("n", count_n, "Number of assemblages (1..512)");
    count->add_option("m", count_m, "Number of solution groups");
    count->add_option("--table", count_table, "Regenerate a reference table")
        ->check(CLI::IsMember({1, 2, 3}));
    count->add_option("--format", count_format)->check(CLI::IsMember({"text", "json"}));
    count_budget.attach(count);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Enumeration feasibility for n assemblages");
    int estimate_n = 0;
    std::string estimate_format = "text";
    BudgetFlags estimate_budget;
    estimate->add_option("n", estimate_n, "Number of assemblages")
        ->required()
        ->check(CLI::PositiveNumber);
    estimate->add_option("--format", estimate_format)->check(CLI::IsMember({"text", "json"}));
    estimate_budget.attach(estimate);

    // seriate
    auto* seriate = app.add_subcommand("seriate", "Exhaustive single-group seriation");
    std::string seriate_csv;
    std::string seriate_mode = "all-valid";
    std::string seriate_out;
    std::string seriate_format = "json";
    unsigned seriate_workers = sg::default_worker_count();
    bool seriate_override = false;
    CriterionFlags seriate_crit;
    seriate->add_option("csv", seriate_csv, "Assemblage count table")->required();
    seriate->add_option("--mode", seriate_mode, "all-valid or best-scoring")
        ->check(CLI::IsMember({"all-valid", "best-scoring"}))
        ->capture_default_str();
    seriate->add_option("--workers", seriate_workers, "Worker threads")
        ->check(CLI::PositiveNumber);
    seriate->add_flag("--override", seriate_override, "Enumerate beyond the feasibility gate");
    seriate->add_option("--out", seriate_out, "Write the document here instead of stdout");
    seriate->add_option("--format", seriate_format)->check(CLI::IsMember({"text", "json"}));
    seriate_crit.attach(seriate);

    // multigroup
    auto* multigroup = app.add_subcommand("multigroup", "Partition into seriating groups");
    std::string mg_csv;
    std::string mg_mode = "exact";
    std::string mg_out;
    std::string mg_format = "json";
    unsigned mg_workers = sg::default_worker_count();
    int mg_min_size = 1;
    int mg_max_groups = 0;
    std::size_t mg_limit = 0;
    bool mg_override = false;
    bool mg_all_orderings = false;
    CriterionFlags mg_crit;
    multigroup->add_option("csv", mg_csv, "Assemblage count table")->required();
    multigroup->add_option("--mode", mg_mode, "exact or heuristic")
        ->check(CLI::IsMember({"exact", "heuristic"}))
        ->capture_default_str();
    multigroup->add_option("--min-group-size", mg_min_size)->check(CLI::PositiveNumber);
    multigroup->add_option("--max-groups", mg_max_groups)->check(CLI::PositiveNumber);
    multigroup->add_option("--limit", mg_limit, "Report only the best N exact solutions");
    multigroup->add_flag("--all-orderings", mg_all_orderings,
                         "List every valid ordering of each group");
    multigroup->add_option("--workers", mg_workers, "Worker threads")->check(CLI::PositiveNumber);
    multigroup->add_flag("--override", mg_override, "Search beyond the scale gate");
    multigroup->add_option("--out", mg_out, "Write the document here instead of stdout");
    multigroup->add_option("--format", mg_format)->check(CLI::IsMember({"text", "json"}));
    mg_crit.attach(multigroup);

    // diagram
    auto* diagram = app.add_subcommand("diagram", "Battleship diagram of a solution document");
    std::string diagram_doc;
    std::string diagram_out;
    sg::DiagramOptions diagram_opts;
    std::size_t diagram_solution = 1;
    diagram->add_option("document", diagram_doc, "Solution document (JSON), or - for stdin")
        ->required();
    diagram->add_option("--width", diagram_opts.width, "Bar width for frequency 1.0")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    diagram->add_option("--solution", diagram_solution, "1-based solution rank to draw")
        ->check(CLI::PositiveNumber);
    diagram->add_option("--out", diagram_out, "Write the diagram here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*count) {
            if (count_table == 0 && count_n == 0) {
                throw std::invalid_argument("count needs n or --table");
            }
            return cmd_count(count_n, count_m, count_table, count_budget.build(), count_format);
        }
        if (*estimate) {
            return cmd_estimate(estimate_n, estimate_budget.build(), estimate_format);
        }
        if (*seriate) {
            const auto matrix = sg::load_assemblage_csv(seriate_csv);
            sg::EnumerationRequest req{matrix, seriate_crit.build(),
                                       seriate_mode == "all-valid"
                                           ? sg::EnumerationRequest::Mode::all_valid
                                           : sg::EnumerationRequest::Mode::best_scoring,
                                       seriate_workers, seriate_override};
            const auto result = sg::solve_single(req);
            std::cerr << "tested " << result.tested_count << " orderings in "
                      << result.elapsed_seconds << " s\n";
            const auto doc = sg::make_seriate_document(matrix, req, result);
            emit(render(doc, seriate_format), seriate_out);
            const bool any_valid =
                !result.solutions.empty() && result.solutions.front().report.valid;
            return any_valid ? kOk : kNoSolution;
        }
        if (*multigroup) {
            const auto matrix = sg::load_assemblage_csv(mg_csv);
            const auto criterion = mg_crit.build();
            sg::MultigroupConstraints cons;
            cons.min_group_size = mg_min_size;
            if (mg_max_groups > 0) {
                cons.max_groups = mg_max_groups;
            }
            std::vector<sg::GroupedSolution> solutions;
            if (mg_mode == "exact") {
                cons.mode = sg::MultigroupConstraints::Mode::exact;
                solutions = sg::solve_exact(matrix, criterion, cons,
                                            {mg_workers, mg_override, mg_all_orderings, mg_limit});
            } else {
                cons.mode = sg::MultigroupConstraints::Mode::agglomerative;
                solutions.push_back(sg::solve_agglomerative(matrix, criterion, cons));
            }
            const bool any = !solutions.empty();
            const auto doc =
                sg::make_multigroup_document(matrix, criterion, cons, std::move(solutions));
            emit(render(doc, mg_format), mg_out);
            return any ? kOk : kNoSolution;
        }
        if (*diagram) {
            std::string text;
            if (diagram_doc == "-") {
                text.assign(std::istreambuf_iterator<char>(std::cin), {});
            } else {
                std::ifstream in(diagram_doc, std::ios::binary);
                if (!in) {
                    throw sg::ParseError("cannot open '" + diagram_doc + "'", 0, 0);
                }
                text.assign(std::istreambuf_iterator<char>(in), {});
            }
            const auto doc = sg::parse_document(text);
            diagram_opts.solution = diagram_solution - 1;
            emit(sg::render_diagram(doc, diagram_opts), diagram_out);
            return kOk;
        }
    } catch (const sg::ParseError& e) {
        std::cerr << "error: " << e.what();
        if (e.row() > 0) {
            std::cerr << " (line " << e.row();
            if (e.column() > 0) {
                std::cerr << ", column " << e.column();
            }
            std::cerr << ')';
        }
        std::cerr << '\n';
        return kInputError;
    } catch (const sg::FeasibilityRefused& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const sg::ScaleRefused& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
