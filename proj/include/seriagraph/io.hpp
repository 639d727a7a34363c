#pragma once

#include "seriagraph/combinatorics.hpp"
#include "seriagraph/enumeration.hpp"
#include "seriagraph/model.hpp"
#include "seriagraph/multigroup.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seriagraph {

/// Comma-separated table: header "id,<class>,...", then one row per
/// assemblage with non-negative integer counts. Blank lines are ignored.
/// Throws ParseError naming the 1-based line and column of the first problem.
AssemblageMatrix read_assemblage_csv(std::istream& in);
AssemblageMatrix load_assemblage_csv(const std::filesystem::path& path);
void write_assemblage_csv(std::ostream& out, const AssemblageMatrix& m);

/// FNV-1a 64-bit digest (16 hex digits) of ids, class names and counts.
std::string instance_digest(const AssemblageMatrix& m);

inline constexpr const char* kSchemaVersion = "1";

struct InstanceData {
    std::vector<std::string> ids;
    std::vector<std::string> class_names;
    std::vector<std::vector<std::int64_t>> counts;

    static InstanceData from(const AssemblageMatrix& m);
    AssemblageMatrix to_matrix() const;

    bool operator==(const InstanceData&) const = default;
};

struct CountSummary {
    std::string name;
    std::string count;
    std::string seconds;
    std::string years;

    bool operator==(const CountSummary&) const = default;
};

/// Output of the seriate and multigroup commands. Everything needed to redraw
/// a diagram is embedded, including the input counts.
struct SolutionDocument {
    std::string schema_version = kSchemaVersion;
    std::string kind;  // "seriate" or "multigroup"
    std::string instance_digest;
    UnimodalityCriterion criterion;
    InstanceData instance;
    std::vector<CountSummary> counts;

    // kind == "seriate"
    std::string enumeration_mode;
    std::string tested_count;
    std::vector<ScoredOrdering> orderings;

    // kind == "multigroup"
    MultigroupConstraints constraints;
    std::vector<GroupedSolution> solutions;

    bool operator==(const SolutionDocument&) const = default;
};

SolutionDocument make_seriate_document(const AssemblageMatrix& m, const EnumerationRequest& req,
                                       const EnumerationResult& result);
SolutionDocument make_multigroup_document(const AssemblageMatrix& m,
                                          const UnimodalityCriterion& criterion,
                                          const MultigroupConstraints& cons,
                                          std::vector<GroupedSolution> solutions);

nlohmann::ordered_json to_json(const SolutionDocument& doc);
/// Throws ParseError (row/column 0) on schema problems.
SolutionDocument document_from_json(const nlohmann::json& j);

std::string write_document(const SolutionDocument& doc);
SolutionDocument parse_document(std::string_view text);

/// Human-readable rendering of a document.
std::string render_text(const SolutionDocument& doc);

/// Right-aligned plain-text table with a header row.
struct TextTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string render() const;
    nlohmann::ordered_json to_json() const;
};

/// Canonical orderings n!/2 with enumeration time, for the standard n values.
TextTable seriation_count_table(const ComputeBudget& budget = {});
/// S(n, m) for n in {20, 40, 60} and m in {3, 4, 6, 8, 10, 15, 20, 25, 30};
/// blank where m > n/2.
TextTable partition_count_table();
/// Worst-case multigroup totals with enumeration time.
TextTable multigroup_count_table(const ComputeBudget& budget = {});

/// Sizes listed in the seriation and multigroup count tables.
const std::vector<unsigned>& standard_table_sizes();

} // namespace seriagraph
