#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace seriagraph {

/// Arbitrary-precision non-negative integer holding solution-space counts.
using BigCount = boost::multiprecision::cpp_int;

/// Decimal floating type (50 significant digits) used for time estimates,
/// since counts at n = 512 are far beyond the range of double.
using Decimal = boost::multiprecision::cpp_dec_float_50;

struct ComputeBudget {
    unsigned cores = 64;
    double seconds_per_test = 0.005;
};

/// 365.25-day year.
inline constexpr long kSecondsPerYear = 31'557'600;

struct TimeEstimate {
    Decimal seconds;
    Decimal years;
};

BigCount factorial(unsigned n);

/// n!/2 for n >= 2, and 1 for n in {0, 1}.
BigCount unique_seriation_count(unsigned n);

/// Dense triangular memo of Stirling numbers of the second kind, built row by
/// row with S(n, m) = m S(n-1, m) + S(n-1, m-1). Rows are appended on demand up
/// to `capacity`; reads of rows already built are safe from many threads once
/// construction is finished.
class StirlingTable {
public:
    static constexpr unsigned kDefaultCapacity = 512;

    explicit StirlingTable(unsigned capacity = kDefaultCapacity);

    /// Extends the table through row n. Throws std::out_of_range above capacity.
    void reserve_rows(unsigned n);

    /// S(n, m); zero when m > n. Builds missing rows first.
    const BigCount& operator()(unsigned n, unsigned m);

    /// S(n, m) from rows already built; throws std::out_of_range otherwise.
    const BigCount& at(unsigned n, unsigned m) const;

    /// Row n as S(n, 0..n).
    const std::vector<BigCount>& row(unsigned n);

    unsigned rows_built() const noexcept { return static_cast<unsigned>(rows_.size()); }
    unsigned capacity() const noexcept { return capacity_; }

private:
    unsigned capacity_;
    std::vector<std::vector<BigCount>> rows_;
    BigCount zero_{0};
};

BigCount stirling2(unsigned n, unsigned m);

/// Bell number: sum of S(n, i) for i in 1..n. Requires n >= 1.
BigCount all_partitions_count(unsigned n);

/// Worst-case multigroup solution count: sum over m of S(n, m) (n-m-1)!,
/// omitting terms whose factorial argument is negative (m = n).
/// Throws std::invalid_argument for n < 2.
BigCount total_multigroup_solutions(unsigned n);

/// seconds = count * seconds_per_test / cores, years = seconds / kSecondsPerYear.
TimeEstimate estimate_time(const BigCount& count, const ComputeBudget& budget = {});

/// Smallest m in 1..n maximizing S(n, m).
unsigned stirling_row_argmax(unsigned n);

/// printf("%.*g")-style rendering at `sig_digits` significant digits:
/// plain notation when the rounded decimal exponent lies in [-4, sig_digits),
/// otherwise scientific with lowercase 'e' and a signed two-digit-minimum
/// exponent. Trailing zeros are dropped. Rounding is exact, half to even.
std::string format_count(const BigCount& value, unsigned sig_digits = 2);
std::string format_decimal(const Decimal& value, unsigned sig_digits = 2);

} // namespace seriagraph
