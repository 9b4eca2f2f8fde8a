#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riskindexlab/engines/hsrai.hpp"
#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/random.hpp"

namespace riskindexlab {

struct LeakageConfig {
    RegimeSwitchScenario scenario;  // single asset is used
    LeverageParams params{0.10, 1.5, 0.0, 2};
    VolRecipe recipe{VolMethod::ewma_short, 0.97, 0.94, 1, 20, 252.0};
    std::vector<std::size_t> lags{1, 3, 5, 10};  // rebalance interval D in observations
    double rate = 0.0;                            // flat cash rate p.a.
    std::uint64_t seed = 42;
};

struct LeakagePoint {
    std::size_t lag = 1;
    double realized_vol = 0.0;  // annualized, over the common evaluation window
    double leakage = 0.0;       // max(realized − target, 0)
};

struct LeakageReport {
    LeakageConfig config;
    std::vector<LeakagePoint> points;
    double underlying_vol = 0.0;  // same window
    Date eval_start;
    bool pass_through = false;    // exposure pinned at 1: targeting disabled
    bool non_decreasing = true;   // realized_vol non-decreasing in lag
};

namespace detail {

inline double annualized_log_vol(std::span<const double> levels, double factor = 252.0) {
    std::vector<double> r;
    r.reserve(levels.size());
    for (std::size_t i = 1; i < levels.size(); ++i) r.push_back(std::log(levels[i] / levels[i - 1]));
    if (r.empty()) return 0.0;
    return std::sqrt(factor * sample_variance(r));
}

}  // namespace detail

/// Runs the cap/floor engine on one synthetic underlying at each rebalance
/// interval and compares realized index volatility over the dates every run covers.
inline LeakageReport leakage_experiment(const LevelSeries& underlying, const LeakageConfig& cfg) {
    if (cfg.lags.empty()) throw InputError("leakage_experiment: no lags given");
    for (auto d : cfg.lags) {
        if (d < 1) throw InputError("leakage_experiment: lag D must be >= 1");
    }
    LeakageReport rep;
    rep.config = cfg;
    rep.pass_through = cfg.params.cap == 1.0 && cfg.params.floor == 1.0;
    const auto rates = DatedSeries::flat(underlying.dates(), cfg.rate, "rate");
    const auto track = realized_vol_track(underlying, cfg.recipe);

    std::vector<RiskControlSeries> runs;
    Date start = underlying.date(0);
    for (auto d : cfg.lags) {
        RiskControlOptions opts;
        opts.rebalance_every = d;
        runs.push_back(run_hsrai(underlying, rates, cfg.params, track, opts));
        start = std::max(start, runs.back().dates.front());
    }
    rep.eval_start = start;
    const auto from = *underlying.index_of(start);
    rep.underlying_vol = detail::annualized_log_vol(std::span(underlying.levels()).subspan(from));
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& run = runs[k];
        const auto offset = static_cast<std::size_t>(
            std::lower_bound(run.dates.begin(), run.dates.end(), start) - run.dates.begin());
        LeakagePoint pt;
        pt.lag = cfg.lags[k];
        pt.realized_vol = detail::annualized_log_vol(std::span(run.levels).subspan(offset));
        pt.leakage = std::max(pt.realized_vol - cfg.params.target_vol, 0.0);
        if (!rep.points.empty() && pt.realized_vol < rep.points.back().realized_vol) {
            rep.non_decreasing = false;
        }
        rep.points.push_back(pt);
    }
    return rep;
}

/// Same experiment on the seeded regime-switch underlying described by `cfg`.
inline LeakageReport leakage_experiment(const LeakageConfig& cfg) {
    RegimeSwitchScenario sc = cfg.scenario;
    sc.assets = 1;
    Rng rng(derive_seed(cfg.seed, 0));
    const auto paths = simulate_regime_switch(sc, rng);
    return leakage_experiment(paths.front(), cfg);
}

}  // namespace riskindexlab
