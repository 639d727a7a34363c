#pragma once

#include "seriagraph/bootstrap.hpp"

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace seriagraph {

template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using ColVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CountMatrix = RowMatrix<std::int64_t>;

/// Row-normalizes a count matrix. Rows with a zero total are left as zeros;
/// callers that care must check totals first.
template <typename Derived>
RowMatrix<double> row_frequencies(const Eigen::MatrixBase<Derived>& counts)
{
    RowMatrix<double> values = counts.template cast<double>();
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        const double total = values.row(i).sum();
        if (total > 0.0) {
            values.row(i) /= total;
        }
    }
    return values;
}

struct FrequencyMatrix {
    RowMatrix<double> values;
    ColVector<std::int64_t> row_totals;
};

/// n assemblages (rows) by k classes (columns) of specimen counts.
class AssemblageMatrix {
public:
    /// Throws InstanceInvalid unless ids are unique and non-empty, n >= 1,
    /// k >= 1, counts are non-negative and every row total is positive.
    /// Empty class_names are replaced by "c0", "c1", ...
    AssemblageMatrix(std::vector<std::string> ids, CountMatrix counts,
                     std::vector<std::string> class_names = {});

    int n() const noexcept { return static_cast<int>(counts_.rows()); }
    int k() const noexcept { return static_cast<int>(counts_.cols()); }

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<std::string>& class_names() const noexcept { return class_names_; }
    const CountMatrix& counts() const noexcept { return counts_; }
    const FrequencyMatrix& frequencies() const noexcept { return freqs_; }

    std::int64_t row_total(int i) const { return freqs_.row_totals(i); }
    std::span<const std::int64_t> row(int i) const
    {
        return {counts_.data() + static_cast<std::ptrdiff_t>(i) * counts_.cols(),
                static_cast<std::size_t>(counts_.cols())};
    }

    /// The rows listed, in that order.
    AssemblageMatrix subset(std::span<const int> rows) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::string> class_names_;
    CountMatrix counts_;
    FrequencyMatrix freqs_;
};

/// Throws std::invalid_argument when a row total is zero.
FrequencyMatrix frequencies(const AssemblageMatrix& m);

/// Assemblage row indices in sequence order. An ordering and its mirror image
/// are the same solution; the canonical representative has perm.front() <
/// perm.back().
struct Ordering {
    std::vector<int> perm;

    std::size_t size() const noexcept { return perm.size(); }
    auto operator<=>(const Ordering&) const = default;
};

bool is_canonical(const Ordering& o);
Ordering canonicalize(Ordering o);
Ordering reversed(Ordering o);

struct UnimodalityCriterion {
    enum class Mode { strict, bootstrap };

    Mode mode = Mode::strict;
    double alpha = 0.05;
    unsigned replicates = 1000;
    std::uint64_t seed = 0;

    BootstrapConfig bootstrap_config() const { return {alpha, replicates, seed}; }
    bool operator==(const UnimodalityCriterion&) const = default;
};

struct Violation {
    int class_index = 0;
    /// Positions (not row indices) of the offending adjacent pair.
    std::pair<int, int> positions;
    double magnitude = 0.0;

    bool operator==(const Violation&) const = default;
};

struct EvaluationReport {
    bool valid = true;
    std::vector<Violation> violations;
    double score = 0.0;

    bool operator==(const EvaluationReport&) const = default;
};

/// True iff the sequence rises (weakly) to a peak and then falls (weakly).
/// Neighbours with tie(a, b) are treated as equal. Empty sequences are
/// unimodal.
template <typename Range, typename Tie>
bool is_unimodal(const Range& seq, Tie&& tie)
{
    bool descending = false;
    auto it = std::begin(seq);
    const auto end = std::end(seq);
    if (it == end) {
        return true;
    }
    auto prev = it++;
    for (; it != end; prev = it++) {
        if (tie(*prev, *it)) {
            continue;
        }
        if (*it > *prev) {
            if (descending) {
                return false;
            }
        } else {
            descending = true;
        }
    }
    return true;
}

template <typename Range>
bool is_unimodal(const Range& seq)
{
    return is_unimodal(seq, [](const auto& a, const auto& b) { return a == b; });
}

/// Evaluates orderings of any subset of a matrix's rows under a criterion.
///
/// Each class column is read along the ordering by a two-phase scan: it starts
/// ascending and switches to descending at the first descent; every ascent met
/// after that is a violation whose magnitude is the frequency increase. In
/// strict mode, steps compare exact rational frequencies. In bootstrap mode a
/// step only counts as an ascent or descent when the two bootstrap intervals
/// are disjoint; otherwise it is a tie. Intervals are precomputed per row.
class OrderingEvaluator {
public:
    OrderingEvaluator(const AssemblageMatrix& matrix, const UnimodalityCriterion& criterion);

    /// Full report. `rows` must be distinct row indices of the matrix.
    EvaluationReport evaluate(std::span<const int> rows) const;

    /// Validity only; stops at the first violation.
    bool is_valid(std::span<const int> rows) const;

    /// Violation score, abandoning as soon as it exceeds `abandon_above`
    /// (the returned value is then some partial sum greater than it).
    double score(std::span<const int> rows, double abandon_above) const;

    /// +1 ascent, -1 descent, 0 tie, for class `cls` stepping from row `from`
    /// to row `to`.
    int direction(int cls, int from, int to) const;

    const AssemblageMatrix& matrix() const noexcept { return *matrix_; }
    const UnimodalityCriterion& criterion() const noexcept { return criterion_; }

    /// Bootstrap intervals of row i (empty in strict mode).
    const std::vector<FrequencyInterval>& intervals(int i) const { return intervals_[i]; }

private:
    const AssemblageMatrix* matrix_;
    UnimodalityCriterion criterion_;
    std::vector<std::vector<FrequencyInterval>> intervals_;
};

/// Throws std::invalid_argument unless o is a permutation of 0..n-1.
EvaluationReport evaluate_ordering(const AssemblageMatrix& m, const Ordering& o,
                                   const UnimodalityCriterion& c);

} // namespace seriagraph
