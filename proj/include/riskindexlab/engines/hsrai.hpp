#pragma once

#include <cstddef>
#include <string>

#include "riskindexlab/engines/risk_control.hpp"

namespace riskindexlab {

/// Cap-and-floor risk-control index, re-based to `opts.base`.
///
/// Each step compounds the previous level by
///
///     1 + LF·(B_t / B_{t-1} − 1) + (1 − LF)·(r_{t-1} / 365)·D_{t,t-1}
///
/// where LF was fixed at the most recent rebalance date rb from RV_{rb+1-d·k}
/// (d = `p.lag` >= 1, k = rebalance interval; daily rebalancing gives
/// LF_t from RV_{t-d}), and D is the calendar-day gap.
/// `rates` must carry a fixing for every date the cash leg accrues from.
inline RiskControlSeries run_hsrai(const LevelSeries& underlying, const DatedSeries& rates,
                                   const LeverageParams& p, const VolTrack& rv,
                                   const RiskControlOptions& opts = {}) {
    p.validate();
    opts.validate();
    detail::require_aligned(underlying, rv);
    const DayCount dc = opts.day_count.value_or(DayCount::act365);
    if (p.lag < 1) throw InputError("hsrai: volatility lag must be >= 1");
    const std::size_t lag_obs = p.lag * opts.rebalance_every;
    const std::size_t start = rv.first_valid + lag_obs - 1;
    if (start + 1 >= underlying.size()) {
        throw PreconditionError("hsrai: need more than " + std::to_string(start + 1) +
                                " underlying levels to seed volatility and lag, got " +
                                std::to_string(underlying.size()));
    }

    RiskControlSeries out;
    out.engine = Engine::hsrai;
    out.params = p;
    out.options = opts;
    out.options.day_count = dc;
    out.vol_recipe = rv.recipe;
    const std::size_t steps = underlying.size() - start - 1;
    out.dates.reserve(steps + 1);
    out.levels.reserve(steps + 1);
    out.dates.push_back(underlying.date(start));
    out.levels.push_back(opts.base);

    const auto& B = underlying.levels();
    double lf = 0.0;
    for (std::size_t t = start + 1; t < underlying.size(); ++t) {
        const std::size_t prev = t - 1;
        if ((prev - start) % opts.rebalance_every == 0) {
            const std::size_t rv_idx = prev + 1 - lag_obs;
            lf = detail::exposure_from_rv(Engine::hsrai, p, rv.vol[rv_idx], rv.dates[rv_idx]);
            out.schedule.rebalance_dates.push_back(underlying.date(prev));
            out.schedule.rv_dates.push_back(rv.dates[rv_idx]);
            out.schedule.rv.push_back(rv.vol[rv_idx]);
            out.schedule.lf.push_back(lf);
        }
        const Date d0 = underlying.date(prev);
        const Date d1 = underlying.date(t);
        const double rate = rates.at(d0);
        const double risky = lf * (B[t] / B[prev] - 1.0);
        const double cash = (1.0 - lf) * rate * year_fraction(dc, d0, d1);
        const double level = out.levels.back() * (1.0 + risky + cash);
        detail::require_positive_level("hsrai", level, d1);
        out.dates.push_back(d1);
        out.levels.push_back(level);
        out.exposure.push_back(lf);
        out.risky.push_back(risky);
        out.cash.push_back(cash);
    }
    return out;
}

inline RiskControlSeries run_hsrai(const LevelSeries& underlying, const DatedSeries& rates,
                                   const LeverageParams& p, const VolRecipe& recipe,
                                   const RiskControlOptions& opts = {}) {
    return run_hsrai(underlying, rates, p, realized_vol_track(underlying, recipe), opts);
}

}  // namespace riskindexlab
