#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "riskindexlab/errors.hpp"

namespace riskindexlab {

/// Compounded-return comparison across return scenarios.
///
/// Row statistics follow the layout of the classic compounding tables:
/// the compounded return, its first difference against the previous row
/// (previous − current), the row's standard deviation of per-period returns
/// (n − 1 divisor) and that figure's first difference. Rows may be grouped in
/// blocks of `block` rows; differences restart at 0 on each block's first row.
/// Column statistics give the cross-sectional standard deviation of each
/// period across scenarios.
struct CompoundTable {
    std::vector<std::vector<double>> returns;  // rows = scenarios, columns = periods
    std::vector<double> compounded;            // Π(1 + r) − 1 per row
    std::vector<double> compounded_diff;       // previous − current; 0 on a block's first row
    std::vector<double> row_stddev;
    std::vector<double> row_stddev_diff;       // previous − current; 0 on a block's first row
    std::vector<double> period_stddev;         // per column, n − 1 divisor

    std::size_t rows() const { return returns.size(); }
    std::size_t periods() const { return returns.empty() ? 0 : returns.front().size(); }
};

namespace detail {

inline double stddev_unbiased(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mu = 0.0;
    for (double x : xs) mu += x;
    mu /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

/// `block` = 0 treats all rows as one block.
inline CompoundTable compound_table(const std::vector<std::vector<double>>& returns,
                                    std::size_t block = 0) {
    if (returns.empty() || returns.front().empty()) {
        throw InputError("compound_table: empty returns matrix");
    }
    const std::size_t periods = returns.front().size();
    CompoundTable t;
    t.returns = returns;
    for (std::size_t r = 0; r < returns.size(); ++r) {
        if (returns[r].size() != periods) {
            throw InputError("compound_table: row " + std::to_string(r + 1) + " has " +
                             std::to_string(returns[r].size()) + " periods, expected " +
                             std::to_string(periods));
        }
        double g = 1.0;
        for (std::size_t c = 0; c < periods; ++c) {
            const double x = returns[r][c];
            if (!std::isfinite(x) || x <= -1.0) {
                throw InputError("compound_table: return at row " + std::to_string(r + 1) +
                                 ", period " + std::to_string(c + 1) + " is <= -100%");
            }
            g *= 1.0 + x;
        }
        t.compounded.push_back(g - 1.0);
        t.row_stddev.push_back(detail::stddev_unbiased(returns[r]));
        const bool first = block == 0 ? r == 0 : r % block == 0;
        t.compounded_diff.push_back(first ? 0.0 : t.compounded[r - 1] - t.compounded[r]);
        t.row_stddev_diff.push_back(first ? 0.0 : t.row_stddev[r - 1] - t.row_stddev[r]);
    }
    for (std::size_t c = 0; c < periods; ++c) {
        std::vector<double> col;
        col.reserve(returns.size());
        for (const auto& row : returns) col.push_back(row[c]);
        t.period_stddev.push_back(detail::stddev_unbiased(col));
    }
    return t;
}

/// The 39 reference scenarios: three 13-row ladders of twelve periods each.
/// Each ladder starts with every period at `base` and replaces one more period
/// per row with `shock` (periods 5..12 first, then 4, 3, 2, 1), ending with
/// every period at `shock`. Ladders: (5%, 10%), (−5%, −10%), (5%, −10%).
/// Use with a block size of kCompoundLadderRows.
inline constexpr std::size_t kCompoundLadderRows = 13;

inline std::vector<std::vector<double>> reference_compound_scenarios() {
    constexpr std::size_t order[12] = {4, 5, 6, 7, 8, 9, 10, 11, 3, 2, 1, 0};
    std::vector<std::vector<double>> rows;
    for (auto [base, shock] : {std::pair{0.05, 0.10}, std::pair{-0.05, -0.10}, std::pair{0.05, -0.10}}) {
        std::vector<double> r(12, base);
        rows.push_back(r);
        for (std::size_t c : order) {
            r[c] = shock;
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace riskindexlab
