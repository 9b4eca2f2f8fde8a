#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "riskindexlab/engines/risk_control.hpp"

namespace riskindexlab {

/// Money-market inputs for the cash leg. `rate` drives simple-rate accrual;
/// roll-3m needs both `ir2m` and `ir3m`.
struct CashRates {
    std::optional<DatedSeries> rate;
    std::optional<DatedSeries> ir2m;
    std::optional<DatedSeries> ir3m;
};

namespace detail {

// Annual rate applied from `from` under the chosen accrual convention.
//
// roll-3m blends from the 3-month towards the 2-month fixing as the rolled
// deposit ages through each `roll_days` cycle counted from the index start.
inline double sprci_rate(const CashRates& rates, Accrual accrual, std::size_t roll_days,
                         Date start, Date from) {
    if (accrual == Accrual::simple_rate) return rates.rate->at(from);
    const double r3 = rates.ir3m->at(from);
    const double r2 = rates.ir2m->at(from);
    const long into_roll = days_between(start, from) % static_cast<long>(roll_days);
    return r3 + (r2 - r3) * (static_cast<double>(into_roll) / static_cast<double>(roll_days));
}

}  // namespace detail

/// Cap-only risk-control index whose risky leg is measured from the level at
/// the last rebalance date:
///
///     I_t = I_rb · {1 + LF_rb·(B_t / B_rb − 1) + (1 − LF_rb)·(Π_{i=rb+1..t}(1 + r_{i-1}·D_{i,i-1}/360) − 1)}
///
/// LF_rb uses the RV reading `p.lag` trading days before rb.
inline RiskControlSeries run_sprci(const LevelSeries& underlying, const CashRates& rates,
                                   const LeverageParams& p, const VolTrack& rv,
                                   const RiskControlOptions& opts = {}) {
    p.validate();
    opts.validate();
    detail::require_aligned(underlying, rv);
    if (opts.accrual == Accrual::simple_rate && !rates.rate) {
        throw InputError("sprci: simple-rate accrual needs a rate series");
    }
    if (opts.accrual == Accrual::roll_3m && (!rates.ir2m || !rates.ir3m)) {
        throw InputError("sprci: roll-3m accrual needs both IR2M and IR3M series");
    }
    const DayCount dc = opts.day_count.value_or(DayCount::act360);
    const std::size_t start = rv.first_valid + p.lag;
    if (start + 1 >= underlying.size()) {
        throw PreconditionError("sprci: need more than " + std::to_string(start + 1) +
                                " underlying levels to seed volatility and lag, got " +
                                std::to_string(underlying.size()));
    }

    RiskControlSeries out;
    out.engine = Engine::sprci;
    out.params = p;
    out.options = opts;
    out.options.day_count = dc;
    out.vol_recipe = rv.recipe;
    out.dates.push_back(underlying.date(start));
    out.levels.push_back(opts.base);

    const auto& B = underlying.levels();
    const Date origin = underlying.date(start);
    double lf = 0.0;
    double level_rb = opts.base;
    double b_rb = B[start];
    double accrued = 1.0;  // Π(1 + r·D/360) since rb
    for (std::size_t t = start + 1; t < underlying.size(); ++t) {
        const std::size_t prev = t - 1;
        if ((prev - start) % opts.rebalance_every == 0) {
            const std::size_t rv_idx = prev - p.lag;
            lf = detail::exposure_from_rv(Engine::sprci, p, rv.vol[rv_idx], rv.dates[rv_idx]);
            level_rb = out.levels.back();
            b_rb = B[prev];
            accrued = 1.0;
            out.schedule.rebalance_dates.push_back(underlying.date(prev));
            out.schedule.rv_dates.push_back(rv.dates[rv_idx]);
            out.schedule.rv.push_back(rv.vol[rv_idx]);
            out.schedule.lf.push_back(lf);
        }
        const Date d0 = underlying.date(prev);
        const Date d1 = underlying.date(t);
        const double rate = detail::sprci_rate(rates, opts.accrual, opts.roll_days, origin, d0);
        const double accrued_prev = accrued;
        accrued *= 1.0 + rate * year_fraction(dc, d0, d1);

        const double level_prev = out.levels.back();
        const double level = level_rb * (1.0 + lf * (B[t] / b_rb - 1.0) + (1.0 - lf) * (accrued - 1.0));
        detail::require_positive_level("sprci", level, d1);
        out.dates.push_back(d1);
        out.levels.push_back(level);
        out.exposure.push_back(lf);
        out.risky.push_back(level_rb * lf * (B[t] - B[prev]) / b_rb / level_prev);
        out.cash.push_back(level_rb * (1.0 - lf) * (accrued - accrued_prev) / level_prev);
    }
    return out;
}

inline RiskControlSeries run_sprci(const LevelSeries& underlying, const CashRates& rates,
                                   const LeverageParams& p, const VolRecipe& recipe,
                                   const RiskControlOptions& opts = {}) {
    return run_sprci(underlying, rates, p, realized_vol_track(underlying, recipe), opts);
}

}  // namespace riskindexlab
