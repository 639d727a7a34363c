#include "seriagraph/model.hpp"

#include "seriagraph/errors.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace seriagraph {

AssemblageMatrix::AssemblageMatrix(std::vector<std::string> ids, CountMatrix counts,
                                   std::vector<std::string> class_names)
    : ids_(std::move(ids)), class_names_(std::move(class_names)), counts_(std::move(counts))
{
    if (counts_.rows() < 1 || counts_.cols() < 1) {
        throw InstanceInvalid("assemblage matrix needs at least one row and one class");
    }
    if (static_cast<Eigen::Index>(ids_.size()) != counts_.rows()) {
        throw InstanceInvalid("expected " + std::to_string(counts_.rows()) + " ids, got " +
                              std::to_string(ids_.size()));
    }
    std::set<std::string> seen;
    for (const auto& id : ids_) {
        if (id.empty()) {
            throw InstanceInvalid("assemblage ids must be non-empty");
        }
        if (!seen.insert(id).second) {
            throw InstanceInvalid("duplicate assemblage id '" + id + "'");
        }
    }
    if (class_names_.empty()) {
        for (Eigen::Index j = 0; j < counts_.cols(); ++j) {
            class_names_.push_back("c" + std::to_string(j));
        }
    } else if (static_cast<Eigen::Index>(class_names_.size()) != counts_.cols()) {
        throw InstanceInvalid("expected " + std::to_string(counts_.cols()) +
                              " class names, got " + std::to_string(class_names_.size()));
    }
    for (Eigen::Index i = 0; i < counts_.rows(); ++i) {
        for (Eigen::Index j = 0; j < counts_.cols(); ++j) {
            if (counts_(i, j) < 0) {
                throw InstanceInvalid("negative count for assemblage '" + ids_[i] + "', class '" +
                                      class_names_[j] + "'");
            }
        }
        if (counts_.row(i).sum() == 0) {
            throw InstanceInvalid("assemblage '" + ids_[i] + "' has no specimens");
        }
    }
    freqs_ = seriagraph::frequencies(*this);
}

AssemblageMatrix AssemblageMatrix::subset(std::span<const int> rows) const
{
    CountMatrix sub(static_cast<Eigen::Index>(rows.size()), counts_.cols());
    std::vector<std::string> sub_ids;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        sub.row(static_cast<Eigen::Index>(r)) = counts_.row(rows[r]);
        sub_ids.push_back(ids_.at(rows[r]));
    }
    return AssemblageMatrix(std::move(sub_ids), std::move(sub), class_names_);
}

FrequencyMatrix frequencies(const AssemblageMatrix& m)
{
    FrequencyMatrix f;
    f.row_totals = m.counts().rowwise().sum();
    for (Eigen::Index i = 0; i < f.row_totals.size(); ++i) {
        if (f.row_totals(i) <= 0) {
            throw std::invalid_argument("zero row total for assemblage '" + m.ids()[i] + "'");
        }
    }
    f.values = row_frequencies(m.counts());
    return f;
}

bool is_canonical(const Ordering& o)
{
    return o.perm.size() < 2 || o.perm.front() < o.perm.back();
}

Ordering canonicalize(Ordering o)
{
    if (!is_canonical(o)) {
        std::reverse(o.perm.begin(), o.perm.end());
    }
    return o;
}

Ordering reversed(Ordering o)
{
    std::reverse(o.perm.begin(), o.perm.end());
    return o;
}

OrderingEvaluator::OrderingEvaluator(const AssemblageMatrix& matrix,
                                     const UnimodalityCriterion& criterion)
    : matrix_(&matrix), criterion_(criterion)
{
    if (criterion_.mode == UnimodalityCriterion::Mode::bootstrap) {
        const auto cfg = criterion_.bootstrap_config();
        validate(cfg);
        intervals_.reserve(static_cast<std::size_t>(matrix.n()));
        for (int i = 0; i < matrix.n(); ++i) {
            intervals_.push_back(bootstrap_intervals(matrix.row(i), cfg));
        }
    }
}

int OrderingEvaluator::direction(int cls, int from, int to) const
{
    if (criterion_.mode == UnimodalityCriterion::Mode::bootstrap) {
        const auto& a = intervals_[from][cls];
        const auto& b = intervals_[to][cls];
        if (significantly_greater(b, a)) {
            return 1;
        }
        if (significantly_greater(a, b)) {
            return -1;
        }
        return 0;
    }
    // Exact rational comparison: c_from / t_from vs c_to / t_to.
    const auto& counts = matrix_->counts();
    const __int128 lhs = static_cast<__int128>(counts(to, cls)) * matrix_->row_total(from);
    const __int128 rhs = static_cast<__int128>(counts(from, cls)) * matrix_->row_total(to);
    return (lhs > rhs) - (lhs < rhs);
}

EvaluationReport OrderingEvaluator::evaluate(std::span<const int> rows) const
{
    EvaluationReport report;
    const auto& freq = matrix_->frequencies().values;
    for (int cls = 0; cls < matrix_->k(); ++cls) {
        bool descending = false;
        for (std::size_t p = 1; p < rows.size(); ++p) {
            const int d = direction(cls, rows[p - 1], rows[p]);
            if (d < 0) {
                descending = true;
            } else if (d > 0 && descending) {
                const double mag = freq(rows[p], cls) - freq(rows[p - 1], cls);
                report.violations.push_back(
                    {cls, {static_cast<int>(p - 1), static_cast<int>(p)}, mag});
                report.score += mag;
            }
        }
    }
    report.valid = report.violations.empty();
    return report;
}

bool OrderingEvaluator::is_valid(std::span<const int> rows) const
{
    for (int cls = 0; cls < matrix_->k(); ++cls) {
        bool descending = false;
        for (std::size_t p = 1; p < rows.size(); ++p) {
            const int d = direction(cls, rows[p - 1], rows[p]);
            if (d < 0) {
                descending = true;
            } else if (d > 0 && descending) {
                return false;
            }
        }
    }
    return true;
}

double OrderingEvaluator::score(std::span<const int> rows, double abandon_above) const
{
    const auto& freq = matrix_->frequencies().values;
    double total = 0.0;
    for (int cls = 0; cls < matrix_->k(); ++cls) {
        bool descending = false;
        for (std::size_t p = 1; p < rows.size(); ++p) {
            const int d = direction(cls, rows[p - 1], rows[p]);
            if (d < 0) {
                descending = true;
            } else if (d > 0 && descending) {
                total += freq(rows[p], cls) - freq(rows[p - 1], cls);
                if (total > abandon_above) {
                    return total;
                }
            }
        }
    }
    return total;
}

EvaluationReport evaluate_ordering(const AssemblageMatrix& m, const Ordering& o,
                                   const UnimodalityCriterion& c)
{
    if (static_cast<int>(o.perm.size()) != m.n()) {
        throw std::invalid_argument("ordering has " + std::to_string(o.perm.size()) +
                                    " entries for " + std::to_string(m.n()) + " assemblages");
    }
    std::vector<bool> seen(static_cast<std::size_t>(m.n()), false);
    for (int r : o.perm) {
        if (r < 0 || r >= m.n() || seen[static_cast<std::size_t>(r)]) {
            throw std::invalid_argument("ordering is not a permutation of the assemblage rows");
        }
        seen[static_cast<std::size_t>(r)] = true;
    }
    return OrderingEvaluator(m, c).evaluate(o.perm);
}

} // namespace seriagraph
