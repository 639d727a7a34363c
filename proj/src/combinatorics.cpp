#include "seriagraph/combinatorics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ios>
#include <stdexcept>

namespace seriagraph {

namespace {

// Shortest decimal string that round-trips to `x`, so 0.005 becomes exactly
// 5/1000 rather than the nearest binary double.
Decimal shortest_decimal(double x)
{
    char buf[64];
    for (int digits = 1; digits < 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, x);
        if (std::strtod(buf, nullptr) == x) {
            return Decimal{std::string(buf)};
        }
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return Decimal{std::string(buf)};
}

} // namespace

BigCount factorial(unsigned n)
{
    BigCount result = 1;
    for (unsigned i = 2; i <= n; ++i) {
        result *= i;
    }
    return result;
}

BigCount unique_seriation_count(unsigned n)
{
    if (n < 2) {
        return 1;
    }
    return factorial(n) / 2;
}

StirlingTable::StirlingTable(unsigned capacity) : capacity_(capacity)
{
    rows_.push_back({BigCount{1}});
}

void StirlingTable::reserve_rows(unsigned n)
{
    if (n > capacity_) {
        throw std::out_of_range("StirlingTable: row " + std::to_string(n) +
                                " exceeds capacity " + std::to_string(capacity_));
    }
    rows_.reserve(n + 1);
    while (rows_.size() <= n) {
        const auto& prev = rows_.back();
        const auto i = static_cast<unsigned>(rows_.size());
        std::vector<BigCount> next(i + 1);
        next[0] = 0;
        for (unsigned m = 1; m <= i; ++m) {
            BigCount value = (m < i) ? BigCount(prev[m] * m) : BigCount(0);
            value += prev[m - 1];
            next[m] = std::move(value);
        }
        rows_.push_back(std::move(next));
    }
}

const BigCount& StirlingTable::operator()(unsigned n, unsigned m)
{
    reserve_rows(n);
    return at(n, m);
}

const BigCount& StirlingTable::at(unsigned n, unsigned m) const
{
    if (n >= rows_.size()) {
        throw std::out_of_range("StirlingTable: row " + std::to_string(n) + " not built");
    }
    return m > n ? zero_ : rows_[n][m];
}

const std::vector<BigCount>& StirlingTable::row(unsigned n)
{
    reserve_rows(n);
    return rows_[n];
}

BigCount stirling2(unsigned n, unsigned m)
{
    if (m > n) {
        return 0;
    }
    StirlingTable table(n);
    return table(n, m);
}

BigCount all_partitions_count(unsigned n)
{
    if (n < 1) {
        throw std::invalid_argument("all_partitions_count requires n >= 1");
    }
    StirlingTable table(n);
    BigCount total = 0;
    for (const auto& s : table.row(n)) {
        total += s;
    }
    return total;
}

BigCount total_multigroup_solutions(unsigned n)
{
    if (n < 2) {
        throw std::invalid_argument("total_multigroup_solutions requires n >= 2");
    }
    StirlingTable table(n);
    const auto& row = table.row(n);
    // Accumulate (n-m-1)! incrementally from m = n-1 (0!) down to m = 1.
    BigCount total = 0;
    BigCount fact = 1;
    for (unsigned m = n - 1; m >= 1; --m) {
        const unsigned k = n - m - 1;
        if (k > 0) {
            fact *= k;
        }
        total += row[m] * fact;
    }
    return total;
}

TimeEstimate estimate_time(const BigCount& count, const ComputeBudget& budget)
{
    if (budget.cores == 0 || !(budget.seconds_per_test > 0.0)) {
        throw std::invalid_argument("estimate_time: budget fields must be positive");
    }
    const Decimal per_test = shortest_decimal(budget.seconds_per_test);

    TimeEstimate est;
    est.seconds = Decimal(count) * per_test / Decimal(budget.cores);
    est.years = est.seconds / Decimal(kSecondsPerYear);
    return est;
}

unsigned stirling_row_argmax(unsigned n)
{
    if (n < 1) {
        throw std::invalid_argument("stirling_row_argmax requires n >= 1");
    }
    StirlingTable table(n);
    const auto& row = table.row(n);
    unsigned best = 1;
    for (unsigned m = 2; m <= n; ++m) {
        if (row[m] > row[best]) {
            best = m;
        }
    }
    return best;
}

namespace {

// value = 0.d0d1d2... * 10^(exp10 + 1), i.e. d0 is the 10^exp10 digit.
std::string render_significant(std::string digits, int exp10, unsigned sig)
{
    if (digits.size() > sig) {
        const std::string tail = digits.substr(sig);
        digits.resize(sig);
        bool round_up = false;
        if (tail[0] > '5') {
            round_up = true;
        } else if (tail[0] == '5') {
            const bool exact_half =
                std::all_of(tail.begin() + 1, tail.end(), [](char c) { return c == '0'; });
            round_up = !exact_half || ((digits.back() - '0') % 2 == 1);
        }
        if (round_up) {
            int i = static_cast<int>(digits.size()) - 1;
            while (i >= 0 && digits[i] == '9') {
                digits[i] = '0';
                --i;
            }
            if (i < 0) {
                digits.insert(digits.begin(), '1');
                digits.pop_back();
                ++exp10;
            } else {
                ++digits[i];
            }
        }
    }
    digits.resize(sig, '0');

    const int precision = static_cast<int>(sig);
    std::string out;
    if (exp10 < precision && exp10 >= -4) {
        std::string int_part;
        std::string frac_part;
        if (exp10 >= 0) {
            int_part = digits.substr(0, exp10 + 1);
            frac_part = digits.substr(exp10 + 1);
        } else {
            int_part = "0";
            frac_part = std::string(-exp10 - 1, '0') + digits;
        }
        while (!frac_part.empty() && frac_part.back() == '0') {
            frac_part.pop_back();
        }
        out = int_part;
        if (!frac_part.empty()) {
            out += '.' + frac_part;
        }
    } else {
        std::string mantissa = digits.substr(1);
        while (!mantissa.empty() && mantissa.back() == '0') {
            mantissa.pop_back();
        }
        out = digits.substr(0, 1);
        if (!mantissa.empty()) {
            out += '.' + mantissa;
        }
        const int mag = std::abs(exp10);
        out += exp10 < 0 ? "e-" : "e+";
        if (mag < 10) {
            out += '0';
        }
        out += std::to_string(mag);
    }
    return out;
}

} // namespace

std::string format_count(const BigCount& value, unsigned sig_digits)
{
    if (sig_digits < 1) {
        throw std::invalid_argument("format_count requires sig_digits >= 1");
    }
    if (value < 0) {
        throw std::invalid_argument("format_count requires a non-negative value");
    }
    if (value == 0) {
        return "0";
    }
    std::string digits = value.str();
    const int exp10 = static_cast<int>(digits.size()) - 1;
    return render_significant(std::move(digits), exp10, sig_digits);
}

std::string format_decimal(const Decimal& value, unsigned sig_digits)
{
    if (sig_digits < 1) {
        throw std::invalid_argument("format_decimal requires sig_digits >= 1");
    }
    if (value < 0) {
        throw std::invalid_argument("format_decimal requires a non-negative value");
    }
    if (value == 0) {
        return "0";
    }
    // "d.ddd...e+XX" at the type's full precision.
    const std::string sci =
        value.str(std::numeric_limits<Decimal>::digits10, std::ios_base::scientific);
    const auto e = sci.find('e');
    std::string digits;
    for (std::size_t i = 0; i < e; ++i) {
        if (sci[i] >= '0' && sci[i] <= '9') {
            digits += sci[i];
        }
    }
    const int exp10 = std::stoi(sci.substr(e + 1));
    return render_significant(std::move(digits), exp10, sig_digits);
}

} // namespace seriagraph
