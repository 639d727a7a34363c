#include "seriagraph/enumeration.hpp"

#include "seriagraph/errors.hpp"

#include <chrono>
#include <cstdlib>
#include <limits>
#include <thread>

namespace seriagraph {

std::vector<std::pair<int, int>> prefix_blocks(int n)
{
    if (n == 1) {
        return {{0, 0}};
    }
    std::vector<std::pair<int, int>> blocks;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) {
                continue;
            }
            // Some element other than a and b must exceed a to sit last, or
            // for n == 2 the second element is itself last.
            const bool has_tail = (n == 2) ? b > a : (n - 1 - a) - (b > a ? 1 : 0) > 0;
            if (has_tail) {
                blocks.emplace_back(a, b);
            }
        }
    }
    return blocks;
}

std::vector<Ordering> canonical_permutations(int n)
{
    std::vector<Ordering> out;
    for_each_canonical_permutation(n, [&](const std::vector<int>& p) {
        out.push_back(Ordering{p});
        return true;
    });
    return out;
}

namespace {

using Mode = EnumerationRequest::Mode;

class Accumulator {
public:
    Accumulator(const OrderingEvaluator& eval, Mode mode) : eval_(&eval), mode_(mode) {}

    bool operator()(const std::vector<int>& perm)
    {
        ++tested_;
        if (mode_ == Mode::all_valid) {
            if (eval_->is_valid(perm)) {
                found_.push_back(perm);
            }
            return true;
        }
        const double s = eval_->score(perm, best_);
        if (s < best_) {
            best_ = s;
            found_.clear();
            found_.push_back(perm);
        } else if (s == best_) {
            found_.push_back(perm);
        }
        return true;
    }

    void merge(Accumulator&& other)
    {
        tested_ += other.tested_;
        if (mode_ == Mode::best_scoring) {
            if (other.best_ < best_) {
                best_ = other.best_;
                found_ = std::move(other.found_);
                return;
            }
            if (other.best_ > best_) {
                return;
            }
        }
        found_.insert(found_.end(), std::make_move_iterator(other.found_.begin()),
                      std::make_move_iterator(other.found_.end()));
    }

    EnumerationResult finish() &&
    {
        EnumerationResult result;
        result.tested_count = tested_;
        result.solutions.reserve(found_.size());
        for (auto& perm : found_) {
            auto report = eval_->evaluate(perm);
            result.solutions.push_back({Ordering{std::move(perm)}, std::move(report)});
        }
        std::sort(result.solutions.begin(), result.solutions.end(),
                  [](const ScoredOrdering& a, const ScoredOrdering& b) {
                      if (a.report.score != b.report.score) {
                          return a.report.score < b.report.score;
                      }
                      return a.ordering < b.ordering;
                  });
        return result;
    }

private:
    const OrderingEvaluator* eval_;
    Mode mode_;
    std::uint64_t tested_ = 0;
    double best_ = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> found_;
};

void check_gate(const EnumerationRequest& req)
{
    const int n = req.matrix.n();
    if (n > kEnumerationGate && !req.feasibility_override) {
        const auto report = feasibility_report(n);
        throw FeasibilityRefused(
            "refusing to enumerate " + format_count(report.count) + " orderings of " +
            std::to_string(n) + " assemblages (practical limit is " +
            std::to_string(kEnumerationGate) + "): estimated " +
            format_decimal(report.estimate.seconds) + " s = " +
            format_decimal(report.estimate.years) + " years on 64 cores at 5 ms per test; " +
            "pass the override flag to run anyway");
    }
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

EnumerationResult solve_single(const EnumerationRequest& req)
{
    check_gate(req);
    const auto start = std::chrono::steady_clock::now();
    const OrderingEvaluator eval(req.matrix, req.criterion);
    const int n = req.matrix.n();
    const auto blocks = prefix_blocks(n);
    const unsigned workers =
        std::max(1U, std::min<unsigned>(req.worker_count, static_cast<unsigned>(blocks.size())));

    std::vector<Accumulator> partial(workers, Accumulator(eval, req.mode));
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&, w] {
                for (std::size_t b = w; b < blocks.size(); b += workers) {
                    for_each_in_prefix_block(n, blocks[b].first, blocks[b].second, partial[w]);
                }
            });
        }
    }
    for (unsigned w = 1; w < workers; ++w) {
        partial[0].merge(std::move(partial[w]));
    }
    auto result = std::move(partial[0]).finish();
    result.elapsed_seconds = seconds_since(start);
    return result;
}

EnumerationResult solve_single_reference(const EnumerationRequest& req)
{
    check_gate(req);
    const auto start = std::chrono::steady_clock::now();
    const OrderingEvaluator eval(req.matrix, req.criterion);
    Accumulator acc(eval, req.mode);
    for_each_canonical_permutation(req.matrix.n(), acc);
    auto result = std::move(acc).finish();
    result.elapsed_seconds = seconds_since(start);
    return result;
}

std::string to_string(FeasibilityReport::Tier tier)
{
    switch (tier) {
    case FeasibilityReport::Tier::comfortable:
        return "comfortable";
    case FeasibilityReport::Tier::limit:
        return "limit";
    case FeasibilityReport::Tier::infeasible:
        return "infeasible";
    }
    return "unknown";
}

FeasibilityReport feasibility_report(int n, const ComputeBudget& budget)
{
    if (n < 1) {
        throw std::invalid_argument("feasibility_report requires n >= 1");
    }
    FeasibilityReport r;
    r.n = n;
    r.count = unique_seriation_count(static_cast<unsigned>(n));
    r.estimate = estimate_time(r.count, budget);
    const std::string model = " (model-based estimate: " + std::to_string(budget.cores) +
                              " cores, " + format_decimal(Decimal(budget.seconds_per_test), 6) +
                              " s per test; not a measurement)";
    if (n <= 10) {
        r.tier = FeasibilityReport::Tier::comfortable;
        r.advisory = "exhaustive enumeration can test all solutions quickly" + model;
    } else if (n <= kEnumerationGate) {
        r.tier = FeasibilityReport::Tier::limit;
        r.advisory = "at the practical limit for direct enumeration" + model;
    } else {
        r.tier = FeasibilityReport::Tier::infeasible;
        r.advisory = "beyond direct enumeration: combinatorial explosion" + model;
    }
    return r;
}

unsigned default_worker_count()
{
    if (const char* env = std::getenv("SERIAGRAPH_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

} // namespace seriagraph
