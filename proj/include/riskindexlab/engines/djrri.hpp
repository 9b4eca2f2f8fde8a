#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

// Composite major asset classes, in weight-vector order.
inline constexpr std::size_t kStocks = 0;
inline constexpr std::size_t kBonds = 1;
inline constexpr std::size_t kCash = 2;

enum class RiskMeasure { semivariance, semideviation };

inline const char* to_string(RiskMeasure m) {
    return m == RiskMeasure::semivariance ? "semivariance" : "semideviation";
}

inline RiskMeasure parse_risk_measure(const std::string& s) {
    if (s == "semivariance") return RiskMeasure::semivariance;
    if (s == "semideviation") return RiskMeasure::semideviation;
    throw InputError("unknown risk measure '" + s + "' (semivariance|semideviation)");
}

/// Presets for the five relative-risk profiles.
inline constexpr std::array<double, 5> kRiskFractions{0.2, 0.4, 0.6, 0.8, 1.0};

struct DjrriOptions {
    double risk_fraction = 1.0;
    std::size_t lookback = 36;           // months of returns in the risk window
    std::size_t grid = 1000;             // weight resolution: 1/grid
    double min_weight = 0.05;
    RiskMeasure measure = RiskMeasure::semivariance;
    std::optional<std::array<double, 3>> expected_returns;  // default: trailing mean
    double base = 100.0;

    void validate() const {
        if (!(risk_fraction >= 0.0 && risk_fraction <= 1.0)) {
            throw InputError("djrri: risk fraction must lie in [0,1]");
        }
        if (lookback < 2) throw InputError("djrri: lookback must be >= 2 months");
        if (grid < 3) throw InputError("djrri: grid must be >= 3");
        if (!(min_weight >= 0.0 && 3.0 * min_weight <= 1.0)) {
            throw InputError("djrri: minimum weight must lie in [0, 1/3]");
        }
    }
};

struct CmacAllocation {
    Date date;
    std::array<double, 3> weights{};
    std::array<long, 3> grid_weights{};  // weights in units of 1/grid; sum to grid
    std::array<double, 3> expected_returns{};
    double risk_fraction = 0.0;
    double stock_risk = 0.0;     // all-stock risk over the window
    double target_risk = 0.0;    // risk_fraction · stock_risk
    double achieved_risk = 0.0;
    bool target_attainable = true;
};

struct DjrriResult {
    DjrriOptions options;
    std::vector<CmacAllocation> allocations;  // one per rebalance month
    LevelSeries composite;
};

/// Risk of a fixed-weight mix over aligned return windows.
inline double cmac_risk(const std::array<std::span<const double>, 3>& returns,
                        const std::array<double, 3>& w, RiskMeasure measure) {
    const std::size_t m = returns[0].size();
    double mu = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        mu += w[0] * returns[0][k] + w[1] * returns[1][k] + w[2] * returns[2][k];
    }
    mu /= static_cast<double>(m);
    double sv = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double d = w[0] * returns[0][k] + w[1] * returns[1][k] + w[2] * returns[2][k] - mu;
        if (d < 0.0) sv += d * d;
    }
    sv /= static_cast<double>(m);
    return measure == RiskMeasure::semivariance ? sv : std::sqrt(sv);
}

/// One month's allocation: enumerate the weight simplex at 1/grid resolution
/// with every weight ≥ min_weight, keep mixes whose risk does not exceed the
/// target, and among them maximize the weight of the CMAC with the highest
/// expected return (ties: higher expected return, then lower risk).
/// When nothing is feasible the minimum-risk mix is returned and flagged.
inline CmacAllocation allocate_cmac(const std::array<std::span<const double>, 3>& returns,
                                    const std::array<double, 3>& expected, const DjrriOptions& o) {
    o.validate();
    const std::size_t m = returns[0].size();
    if (m == 0 || returns[1].size() != m || returns[2].size() != m) {
        throw InputError("djrri: return windows must be non-empty and of equal length");
    }
    CmacAllocation a;
    a.expected_returns = expected;
    a.risk_fraction = o.risk_fraction;
    a.stock_risk = cmac_risk(returns, {1.0, 0.0, 0.0}, o.measure);
    a.target_risk = o.risk_fraction * a.stock_risk;
    const double tol = 1e-12 * std::max(a.target_risk, 1e-300);

    std::size_t best = 0;
    for (std::size_t j = 1; j < 3; ++j)
        if (expected[j] > expected[best]) best = j;
    const std::size_t other1 = best == 0 ? 1 : 0;
    const std::size_t other2 = 3 - best - other1;

    const auto G = static_cast<long>(o.grid);
    const long lo = static_cast<long>(std::ceil(o.min_weight * static_cast<double>(G) - 1e-9));
    const double g = static_cast<double>(G);

    struct Candidate {
        std::array<double, 3> w{};
        std::array<long, 3> units{};
        double er = -std::numeric_limits<double>::infinity();
        double risk = std::numeric_limits<double>::infinity();
    };
    auto better = [](const Candidate& c, const Candidate& inc) {
        if (c.er != inc.er) return c.er > inc.er;
        return c.risk < inc.risk;
    };

    Candidate min_risk;
    // Scan the best CMAC's weight from high to low; the first level with a
    // feasible mix is optimal for the primary objective.
    for (long wb = G - 2 * lo; wb >= lo; --wb) {
        Candidate level_best;
        bool found = false;
        for (long w1 = lo; w1 <= G - wb - lo; ++w1) {
            const long w2 = G - wb - w1;
            std::array<double, 3> w{};
            w[best] = static_cast<double>(wb) / g;
            w[other1] = static_cast<double>(w1) / g;
            w[other2] = static_cast<double>(w2) / g;
            Candidate c;
            c.w = w;
            c.units[best] = wb;
            c.units[other1] = w1;
            c.units[other2] = w2;
            c.risk = cmac_risk(returns, w, o.measure);
            c.er = w[0] * expected[0] + w[1] * expected[1] + w[2] * expected[2];
            if (c.risk < min_risk.risk) min_risk = c;
            if (c.risk <= a.target_risk + tol && (!found || better(c, level_best))) {
                level_best = c;
                found = true;
            }
        }
        if (found) {
            a.weights = level_best.w;
            a.grid_weights = level_best.units;
            a.achieved_risk = level_best.risk;
            a.target_attainable = true;
            return a;
        }
    }
    a.weights = min_risk.w;
    a.grid_weights = min_risk.units;
    a.achieved_risk = min_risk.risk;
    a.target_attainable = false;
    return a;
}

/// Monthly three-CMAC relative-risk index. All three series must share dates.
///
/// At each month k ≥ lookback the weights are chosen from the trailing
/// `lookback` monthly returns and applied to the return from k to k+1.
inline DjrriResult run_djrri(const LevelSeries& stock, const LevelSeries& bond,
                             const LevelSeries& cash_series, const DjrriOptions& o) {
    o.validate();
    if (stock.dates() != bond.dates() || stock.dates() != cash_series.dates()) {
        throw InputError("djrri: stock, bond and cash series must share the same dates");
    }
    if (stock.size() < o.lookback + 1) {
        throw PreconditionError("djrri: need " + std::to_string(o.lookback) +
                                " months of returns (" + std::to_string(o.lookback + 1) +
                                " levels), got " + std::to_string(stock.size()) + " levels");
    }
    const std::array<ReturnSeries, 3> rets{to_returns(stock, ReturnKind::simple),
                                           to_returns(bond, ReturnKind::simple),
                                           to_returns(cash_series, ReturnKind::simple)};
    DjrriResult res;
    res.options = o;
    std::vector<Date> dates;
    std::vector<double> levels;
    for (std::size_t k = o.lookback; k < stock.size(); ++k) {
        std::array<std::span<const double>, 3> win;
        std::array<double, 3> er{};
        for (std::size_t j = 0; j < 3; ++j) {
            win[j] = rets[j].view().subspan(k - o.lookback, o.lookback);
            er[j] = o.expected_returns ? (*o.expected_returns)[j] : mean(win[j]);
        }
        CmacAllocation a = allocate_cmac(win, er, o);
        a.date = stock.date(k);
        if (levels.empty()) {
            levels.push_back(o.base);
        } else {
            const auto& w = res.allocations.back().weights;
            double r = 0.0;
            for (std::size_t j = 0; j < 3; ++j) r += w[j] * rets[j].values[k - 1];
            levels.push_back(levels.back() * (1.0 + r));
        }
        dates.push_back(a.date);
        res.allocations.push_back(a);
    }
    res.composite = LevelSeries(std::move(dates), std::move(levels), "djrri");
    return res;
}

}  // namespace riskindexlab
