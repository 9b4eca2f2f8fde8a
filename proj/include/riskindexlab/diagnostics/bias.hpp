#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

namespace detail {

inline void require_same_dates(const LevelSeries& a, const LevelSeries& b, const char* what) {
    if (a.dates() != b.dates()) {
        throw InputError(std::string(what) + ": index and market dates are not aligned");
    }
}

}  // namespace detail

struct NoiseSeries {
    std::size_t window = 21;
    std::vector<Date> dates;     // window end dates
    std::vector<double> values;  // index change − market change over the window
};

/// Part of the index's relative change over each trailing window that the
/// market's relative change over the same window does not account for.
inline NoiseSeries noise(const LevelSeries& index, const LevelSeries& market, std::size_t window = 21) {
    detail::require_same_dates(index, market, "noise");
    if (window < 1) throw InputError("noise: window must be >= 1");
    if (index.size() <= window) {
        throw InputError("noise: window " + std::to_string(window) + " needs more than " +
                         std::to_string(window) + " observations, got " +
                         std::to_string(index.size()));
    }
    NoiseSeries out;
    out.window = window;
    for (std::size_t t = window; t < index.size(); ++t) {
        const double di = index.level(t) / index.level(t - window) - 1.0;
        const double dm = market.level(t) / market.level(t - window) - 1.0;
        out.dates.push_back(index.date(t));
        out.values.push_back(di - dm);
    }
    return out;
}

/// Gap between an index and its market benchmark, both rebased to 100 at the
/// first common date: bias[t] = I'_t − M'_t, increments[t] = bias[t+1] − bias[t].
struct BiasSeries {
    std::vector<Date> dates;
    std::vector<double> index;   // rebased
    std::vector<double> market;  // rebased
    std::vector<double> bias;
    std::vector<double> increments;  // size − 1 entries
    // corr(|ΔB|, |ΔI|); absent when either side has no dispersion.
    std::optional<double> comovement;

    std::size_t size() const { return bias.size(); }

    /// max_t |bias[t] − bias[0] − Σ_{k<t} increments[k]|, with a compensated
    /// running sum.
    double telescoping_residual() const {
        double sum = 0.0, comp = 0.0, worst = 0.0;
        for (std::size_t t = 1; t < bias.size(); ++t) {
            const double x = increments[t - 1];
            const double y = sum + x;
            comp += std::abs(sum) >= std::abs(x) ? (sum - y) + x : (x - y) + sum;
            sum = y;
            worst = std::max(worst, std::abs(bias[t] - bias[0] - (sum + comp)));
        }
        return worst;
    }
};

inline BiasSeries bias_series(const LevelSeries& index, const LevelSeries& market) {
    detail::require_same_dates(index, market, "bias_series");
    if (index.size() < 2) throw InputError("bias_series: need at least two observations");
    BiasSeries b;
    b.dates = index.dates();
    const double i0 = index.level(0);
    const double m0 = market.level(0);
    for (std::size_t t = 0; t < index.size(); ++t) {
        b.index.push_back(100.0 * index.level(t) / i0);
        b.market.push_back(100.0 * market.level(t) / m0);
        b.bias.push_back(b.index.back() - b.market.back());
    }
    std::vector<double> abs_db, abs_di;
    for (std::size_t t = 1; t < b.bias.size(); ++t) {
        b.increments.push_back(b.bias[t] - b.bias[t - 1]);
        abs_db.push_back(std::abs(b.increments.back()));
        abs_di.push_back(std::abs(b.index[t] - b.index[t - 1]));
    }
    if (sample_variance(abs_db) > 0.0 && sample_variance(abs_di) > 0.0) {
        b.comovement = correlation(abs_db, abs_di);
    }
    return b;
}

}  // namespace riskindexlab
