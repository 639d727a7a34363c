#include "seriagraph/io.hpp"

#include "seriagraph/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace seriagraph {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

AssemblageMatrix read_assemblage_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    std::vector<std::string> ids;
    std::vector<std::vector<std::int64_t>> rows;
    std::set<std::string> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (header.empty()) {
            if (fields[0] != "id") {
                throw ParseError("header must start with column 'id'", line_no, 1);
            }
            if (fields.size() < 2) {
                throw ParseError("header names no classes", line_no, 2);
            }
            std::set<std::string> names;
            for (std::size_t c = 1; c < fields.size(); ++c) {
                if (fields[c].empty()) {
                    throw ParseError("empty class name", line_no, c + 1);
                }
                if (!names.insert(fields[c]).second) {
                    throw ParseError("duplicate class name '" + fields[c] + "'", line_no, c + 1);
                }
            }
            header = std::move(fields);
            continue;
        }
        if (fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, std::min(fields.size(), header.size()) + 1);
        }
        if (fields[0].empty()) {
            throw ParseError("empty assemblage id", line_no, 1);
        }
        if (!seen.insert(fields[0]).second) {
            throw ParseError("duplicate assemblage id '" + fields[0] + "'", line_no, 1);
        }
        std::vector<std::int64_t> counts;
        std::int64_t total = 0;
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const auto& f = fields[c];
            std::int64_t v = 0;
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || ptr != f.data() + f.size() || f.empty()) {
                throw ParseError("count '" + f + "' for class '" + header[c] +
                                     "' is not an integer",
                                 line_no, c + 1);
            }
            if (v < 0) {
                throw ParseError("negative count " + f + " for class '" + header[c] + "'", line_no,
                                 c + 1);
            }
            if (total > INT64_MAX - v) {
                throw ParseError("row total overflows", line_no, c + 1);
            }
            total += v;
            counts.push_back(v);
        }
        if (total == 0) {
            throw ParseError("assemblage '" + fields[0] + "' has no specimens", line_no, 0);
        }
        ids.push_back(fields[0]);
        rows.push_back(std::move(counts));
    }
    if (header.empty()) {
        throw ParseError("missing header row", line_no, 0);
    }
    if (rows.empty()) {
        throw ParseError("no assemblage rows", line_no, 0);
    }
    InstanceData data{std::move(ids), std::vector<std::string>(header.begin() + 1, header.end()),
                      std::move(rows)};
    return data.to_matrix();
}

AssemblageMatrix load_assemblage_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    }
    return read_assemblage_csv(in);
}

void write_assemblage_csv(std::ostream& out, const AssemblageMatrix& m)
{
    out << "id";
    for (const auto& c : m.class_names()) {
        out << ',' << c;
    }
    out << '\n';
    for (int i = 0; i < m.n(); ++i) {
        out << m.ids()[i];
        for (int j = 0; j < m.k(); ++j) {
            out << ',' << m.counts()(i, j);
        }
        out << '\n';
    }
}

std::string instance_digest(const AssemblageMatrix& m)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    for (const auto& id : m.ids()) {
        feed(id);
    }
    for (const auto& c : m.class_names()) {
        feed(c);
    }
    for (int i = 0; i < m.n(); ++i) {
        for (int j = 0; j < m.k(); ++j) {
            feed(std::to_string(m.counts()(i, j)));
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

InstanceData InstanceData::from(const AssemblageMatrix& m)
{
    InstanceData d;
    d.ids = m.ids();
    d.class_names = m.class_names();
    for (int i = 0; i < m.n(); ++i) {
        const auto row = m.row(i);
        d.counts.emplace_back(row.begin(), row.end());
    }
    return d;
}

AssemblageMatrix InstanceData::to_matrix() const
{
    const auto n = static_cast<Eigen::Index>(counts.size());
    const auto k = static_cast<Eigen::Index>(class_names.size());
    CountMatrix c(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(counts[i].size()) != k) {
            throw InstanceInvalid("count row " + std::to_string(i) + " has the wrong length");
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            c(i, j) = counts[i][j];
        }
    }
    return AssemblageMatrix(ids, std::move(c), class_names);
}

namespace {

CountSummary summarize(const std::string& name, const BigCount& count)
{
    const auto est = estimate_time(count);
    return {name, count.str(), format_decimal(est.seconds, 4), format_decimal(est.years, 4)};
}

std::string mode_name(UnimodalityCriterion::Mode m)
{
    return m == UnimodalityCriterion::Mode::strict ? "strict" : "bootstrap";
}

std::string mode_name(EnumerationRequest::Mode m)
{
    return m == EnumerationRequest::Mode::all_valid ? "all_valid" : "best_scoring";
}

std::string mode_name(MultigroupConstraints::Mode m)
{
    return m == MultigroupConstraints::Mode::exact ? "exact" : "heuristic";
}

[[noreturn]] void schema_error(const std::string& what)
{
    throw ParseError("solution document: " + what, 0, 0);
}

nlohmann::ordered_json report_json(const EvaluationReport& r)
{
    nlohmann::ordered_json j;
    j["valid"] = r.valid;
    j["score"] = r.score;
    auto v = nlohmann::ordered_json::array();
    for (const auto& x : r.violations) {
        nlohmann::ordered_json e;
        e["class"] = x.class_index;
        e["positions"] = {x.positions.first, x.positions.second};
        e["magnitude"] = x.magnitude;
        v.push_back(std::move(e));
    }
    j["violations"] = std::move(v);
    return j;
}

EvaluationReport report_from(const nlohmann::json& j)
{
    EvaluationReport r;
    r.valid = j.at("valid").get<bool>();
    r.score = j.at("score").get<double>();
    for (const auto& e : j.at("violations")) {
        const auto& pos = e.at("positions");
        r.violations.push_back({e.at("class").get<int>(),
                                {pos.at(0).get<int>(), pos.at(1).get<int>()},
                                e.at("magnitude").get<double>()});
    }
    return r;
}

nlohmann::ordered_json labels(const std::vector<int>& perm, const std::vector<std::string>& ids)
{
    auto j = nlohmann::ordered_json::array();
    for (int r : perm) {
        j.push_back(r >= 0 && r < static_cast<int>(ids.size()) ? ids[r] : std::string("?"));
    }
    return j;
}

} // namespace

SolutionDocument make_seriate_document(const AssemblageMatrix& m, const EnumerationRequest& req,
                                       const EnumerationResult& result)
{
    SolutionDocument doc;
    doc.kind = "seriate";
    doc.instance_digest = instance_digest(m);
    doc.criterion = req.criterion;
    doc.instance = InstanceData::from(m);
    doc.counts.push_back(
        summarize("unique_seriations", unique_seriation_count(static_cast<unsigned>(m.n()))));
    doc.enumeration_mode = mode_name(req.mode);
    doc.tested_count = result.tested_count.str();
    doc.orderings = result.solutions;
    return doc;
}

SolutionDocument make_multigroup_document(const AssemblageMatrix& m,
                                          const UnimodalityCriterion& criterion,
                                          const MultigroupConstraints& cons,
                                          std::vector<GroupedSolution> solutions)
{
    SolutionDocument doc;
    doc.kind = "multigroup";
    doc.instance_digest = instance_digest(m);
    doc.criterion = criterion;
    doc.instance = InstanceData::from(m);
    const auto n = static_cast<unsigned>(m.n());
    doc.counts.push_back(summarize("partitions", all_partitions_count(n)));
    if (n >= 2) {
        doc.counts.push_back(summarize("multigroup_worst_case", total_multigroup_solutions(n)));
    }
    doc.constraints = cons;
    doc.solutions = std::move(solutions);
    return doc;
}

nlohmann::ordered_json to_json(const SolutionDocument& doc)
{
    using oj = nlohmann::ordered_json;
    oj j;
    j["schema_version"] = doc.schema_version;
    j["kind"] = doc.kind;
    j["instance_digest"] = doc.instance_digest;
    j["criterion"] = {{"mode", mode_name(doc.criterion.mode)},
                      {"alpha", doc.criterion.alpha},
                      {"replicates", doc.criterion.replicates},
                      {"seed", doc.criterion.seed}};
    j["instance"] = {{"ids", doc.instance.ids},
                     {"classes", doc.instance.class_names},
                     {"counts", doc.instance.counts}};
    auto counts = oj::array();
    for (const auto& c : doc.counts) {
        counts.push_back(
            {{"name", c.name}, {"count", c.count}, {"seconds", c.seconds}, {"years", c.years}});
    }
    j["counts"] = std::move(counts);

    const auto& ids = doc.instance.ids;
    if (doc.kind == "seriate") {
        auto sols = oj::array();
        for (const auto& s : doc.orderings) {
            sols.push_back({{"ordering", s.ordering.perm},
                            {"labels", labels(s.ordering.perm, ids)},
                            {"report", report_json(s.report)}});
        }
        j["enumeration"] = {{"mode", doc.enumeration_mode},
                            {"tested_count", doc.tested_count},
                            {"solutions", std::move(sols)}};
    } else {
        auto sols = oj::array();
        for (const auto& s : doc.solutions) {
            auto groups = oj::array();
            for (const auto& g : s.groups) {
                oj gj;
                gj["members"] = g.members;
                gj["ordering"] = g.ordering.perm;
                gj["labels"] = labels(g.ordering.perm, ids);
                gj["report"] = report_json(g.report);
                if (!g.all_orderings.empty()) {
                    auto all = oj::array();
                    for (const auto& o : g.all_orderings) {
                        all.push_back(o.perm);
                    }
                    gj["all_orderings"] = std::move(all);
                }
                groups.push_back(std::move(gj));
            }
            sols.push_back({{"rgs", s.partition.rgs},
                            {"group_count", s.partition.group_count},
                            {"groups", std::move(groups)}});
        }
        oj mg;
        mg["mode"] = mode_name(doc.constraints.mode);
        mg["min_group_size"] = doc.constraints.min_group_size;
        mg["max_groups"] =
            doc.constraints.max_groups ? oj(*doc.constraints.max_groups) : oj(nullptr);
        mg["solutions"] = std::move(sols);
        j["multigroup"] = std::move(mg);
    }
    return j;
}

SolutionDocument document_from_json(const nlohmann::json& j)
{
    try {
        SolutionDocument doc;
        doc.schema_version = j.at("schema_version").get<std::string>();
        if (doc.schema_version != kSchemaVersion) {
            schema_error("unsupported schema_version '" + doc.schema_version + "'");
        }
        doc.kind = j.at("kind").get<std::string>();
        doc.instance_digest = j.at("instance_digest").get<std::string>();

        const auto& cj = j.at("criterion");
        const auto mode = cj.at("mode").get<std::string>();
        if (mode == "strict") {
            doc.criterion.mode = UnimodalityCriterion::Mode::strict;
        } else if (mode == "bootstrap") {
            doc.criterion.mode = UnimodalityCriterion::Mode::bootstrap;
        } else {
            schema_error("unknown criterion mode '" + mode + "'");
        }
        doc.criterion.alpha = cj.at("alpha").get<double>();
        doc.criterion.replicates = cj.at("replicates").get<unsigned>();
        doc.criterion.seed = cj.at("seed").get<std::uint64_t>();

        const auto& ij = j.at("instance");
        doc.instance.ids = ij.at("ids").get<std::vector<std::string>>();
        doc.instance.class_names = ij.at("classes").get<std::vector<std::string>>();
        doc.instance.counts = ij.at("counts").get<std::vector<std::vector<std::int64_t>>>();

        for (const auto& c : j.at("counts")) {
            doc.counts.push_back({c.at("name").get<std::string>(), c.at("count").get<std::string>(),
                                  c.at("seconds").get<std::string>(),
                                  c.at("years").get<std::string>()});
        }

        if (doc.kind == "seriate") {
            const auto& ej = j.at("enumeration");
            doc.enumeration_mode = ej.at("mode").get<std::string>();
            doc.tested_count = ej.at("tested_count").get<std::string>();
            for (const auto& s : ej.at("solutions")) {
                doc.orderings.push_back({Ordering{s.at("ordering").get<std::vector<int>>()},
                                         report_from(s.at("report"))});
            }
        } else if (doc.kind == "multigroup") {
            const auto& mj = j.at("multigroup");
            const auto m = mj.at("mode").get<std::string>();
            if (m == "exact") {
                doc.constraints.mode = MultigroupConstraints::Mode::exact;
            } else if (m == "heuristic") {
                doc.constraints.mode = MultigroupConstraints::Mode::agglomerative;
            } else {
                schema_error("unknown multigroup mode '" + m + "'");
            }
            doc.constraints.min_group_size = mj.at("min_group_size").get<int>();
            if (!mj.at("max_groups").is_null()) {
                doc.constraints.max_groups = mj.at("max_groups").get<int>();
            }
            for (const auto& s : mj.at("solutions")) {
                GroupedSolution sol;
                sol.partition.rgs = s.at("rgs").get<std::vector<int>>();
                sol.partition.group_count = s.at("group_count").get<int>();
                for (const auto& g : s.at("groups")) {
                    SolvedGroup sg;
                    sg.members = g.at("members").get<std::vector<int>>();
                    sg.ordering.perm = g.at("ordering").get<std::vector<int>>();
                    sg.report = report_from(g.at("report"));
                    if (g.contains("all_orderings")) {
                        for (const auto& o : g.at("all_orderings")) {
                            sg.all_orderings.push_back(Ordering{o.get<std::vector<int>>()});
                        }
                    }
                    sol.groups.push_back(std::move(sg));
                }
                doc.solutions.push_back(std::move(sol));
            }
        } else {
            schema_error("unknown kind '" + doc.kind + "'");
        }
        return doc;
    } catch (const nlohmann::json::exception& e) {
        schema_error(e.what());
    }
}

std::string write_document(const SolutionDocument& doc)
{
    return to_json(doc).dump(2) + "\n";
}

SolutionDocument parse_document(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("solution document is not valid JSON: ") + e.what(), 0, 0);
    }
    return document_from_json(j);
}

std::string render_text(const SolutionDocument& doc)
{
    std::ostringstream os;
    const auto& ids = doc.instance.ids;
    auto names = [&](const std::vector<int>& perm) {
        std::string s;
        for (int r : perm) {
            if (!s.empty()) {
                s += ' ';
            }
            s += ids.at(static_cast<std::size_t>(r));
        }
        return s;
    };
    os << doc.kind << " (" << ids.size() << " assemblages, " << doc.instance.class_names.size()
       << " classes, digest " << doc.instance_digest << ")\n";
    os << "criterion: " << mode_name(doc.criterion.mode);
    if (doc.criterion.mode == UnimodalityCriterion::Mode::bootstrap) {
        os << " (alpha " << doc.criterion.alpha << ", " << doc.criterion.replicates
           << " replicates, seed " << doc.criterion.seed << ")";
    }
    os << '\n';
    for (const auto& c : doc.counts) {
        os << c.name << ": " << c.count << " (" << c.seconds << " s, " << c.years
           << " years at 64 cores, 5 ms per test)\n";
    }
    if (doc.kind == "seriate") {
        os << "mode: " << doc.enumeration_mode << ", tested " << doc.tested_count
           << " canonical orderings, " << doc.orderings.size() << " reported\n";
        std::size_t rank = 1;
        for (const auto& s : doc.orderings) {
            os << std::setw(4) << rank++ << ". " << names(s.ordering.perm) << "  ["
               << (s.report.valid ? "valid" : "invalid") << ", score " << s.report.score << "]\n";
        }
    } else {
        os << "mode: " << mode_name(doc.constraints.mode) << ", " << doc.solutions.size()
           << " solution(s)\n";
        std::size_t rank = 1;
        for (const auto& s : doc.solutions) {
            os << "solution " << rank++ << ": " << s.partition.group_count << " group(s)\n";
            std::size_t g = 1;
            for (const auto& grp : s.groups) {
                os << "  group " << g++ << ": " << names(grp.ordering.perm) << "  ["
                   << (grp.report.valid ? "valid" : "invalid") << "]\n";
            }
        }
    }
    return os.str();
}

std::string TextTable::render() const
{
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows) {
            width[c] = std::max(width[c], r.at(c).size());
        }
    }
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c > 0) {
                line += "  ";
            }
            line += std::string(width[c] - cells[c].size(), ' ') + cells[c];
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + '\n';
    };
    emit(header);
    for (const auto& r : rows) {
        emit(r);
    }
    return out;
}

nlohmann::ordered_json TextTable::to_json() const
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        for (std::size_t c = 0; c < header.size(); ++c) {
            o[header[c]] = r[c].empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(r[c]);
        }
        arr.push_back(std::move(o));
    }
    return arr;
}

const std::vector<unsigned>& standard_table_sizes()
{
    static const std::vector<unsigned> sizes{4, 6, 8, 10, 12, 13, 14, 15, 16, 20, 40, 60, 80, 100};
    return sizes;
}

TextTable seriation_count_table(const ComputeBudget& budget)
{
    TextTable t{{"N", "Seriation Solutions", "Seconds", "Years"}, {}};
    for (unsigned n : standard_table_sizes()) {
        const auto count = unique_seriation_count(n);
        const auto est = estimate_time(count, budget);
        t.rows.push_back({std::to_string(n), format_count(count), format_decimal(est.seconds),
                          format_decimal(est.years)});
    }
    return t;
}

TextTable partition_count_table()
{
    const std::vector<unsigned> columns{20, 40, 60};
    const std::vector<unsigned> groups{3, 4, 6, 8, 10, 15, 20, 25, 30};
    TextTable t{{"# of Solution Groups (m)"}, {}};
    for (unsigned n : columns) {
        t.header.push_back(std::to_string(n));
    }
    StirlingTable table(columns.back());
    for (unsigned m : groups) {
        std::vector<std::string> row{std::to_string(m)};
        for (unsigned n : columns) {
            row.push_back(2 * m <= n ? format_count(table(n, m)) : std::string());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

TextTable multigroup_count_table(const ComputeBudget& budget)
{
    TextTable t{{"N", "Total Solutions", "Seconds", "Years"}, {}};
    for (unsigned n : standard_table_sizes()) {
        const auto count = total_multigroup_solutions(n);
        const auto est = estimate_time(count, budget);
        t.rows.push_back({std::to_string(n), format_count(count), format_decimal(est.seconds),
                          format_decimal(est.years)});
    }
    return t;
}

} // namespace seriagraph
