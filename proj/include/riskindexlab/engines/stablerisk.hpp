#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "riskindexlab/engines/portfolio.hpp"
#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/random.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

struct StableRiskParams {
    double target_vol = 0.10;
    double threshold = 0.25;        // minimum relative position change that trades
    double cost_rate = 0.0005;      // per unit of traded notional
    std::size_t cov_window = 60;    // daily returns in the covariance estimate
    std::size_t rebalance_every = 1;
    double cash_rate = 0.0;         // money-market rate p.a.
    double cash_fraction = 0.8;     // share of portfolio value earning cash_rate
    double base = 100.0;
    std::size_t realized_window = 63;
    double band = 0.20;             // relative tolerance around target_vol
    double annualization = 252.0;

    void validate() const {
        if (!(target_vol > 0.0)) throw InputError("stablerisk: target volatility must be > 0");
        if (!(threshold >= 0.0)) throw InputError("stablerisk: threshold must be >= 0");
        if (!(cost_rate >= 0.0)) throw InputError("stablerisk: cost rate must be >= 0");
        if (cov_window < 2) throw InputError("stablerisk: covariance window must be >= 2");
        if (rebalance_every < 1) throw InputError("stablerisk: rebalance interval must be >= 1");
        if (!(cash_fraction >= 0.0 && cash_fraction <= 1.0)) {
            throw InputError("stablerisk: cash fraction must lie in [0,1]");
        }
        if (!(base > 0.0)) throw InputError("stablerisk: base must be > 0");
        if (realized_window < 2) throw InputError("stablerisk: realized window must be >= 2");
        if (!(band >= 0.0)) throw InputError("stablerisk: band must be >= 0");
    }
};

/// State of the futures portfolio after the close of one date.
struct FuturesPortfolio {
    Date date;
    std::vector<double> quantity;  // contracts held
    std::vector<double> price;
    std::vector<double> weight;    // quantity·price / value
    double cash = 0.0;
    double value = 0.0;
    double cash_weight() const { return value == 0.0 ? 0.0 : cash / value; }
};

struct StableRiskStep {
    double pnl = 0.0;      // mark-to-market on positions held into the date
    double accrual = 0.0;  // interest on the cash fraction of value
    double costs = 0.0;    // transaction costs paid at the close
    std::size_t trades = 0;
};

struct StableRiskResult {
    StableRiskParams params;
    std::vector<FuturesPortfolio> states;
    std::vector<StableRiskStep> steps;  // steps[k] leads from states[k] to states[k+1]
    std::vector<double> realized_vol;   // rolling, NaN until the window fills
    std::size_t first_rebalance = 0;
    std::size_t band_exits = 0;         // windows with |rv/target − 1| > band
    double max_deviation = 0.0;         // max |rv/target − 1|
    double turnover = 0.0;              // traded notional / average value

    LevelSeries as_levels(std::string label = "stablerisk") const {
        std::vector<Date> d;
        std::vector<double> v;
        for (const auto& s : states) {
            d.push_back(s.date);
            v.push_back(s.value);
        }
        return LevelSeries(std::move(d), std::move(v), std::move(label));
    }
};

namespace detail {

inline std::vector<LevelSeries> common_dates(const std::vector<LevelSeries>& contracts) {
    std::vector<Date> dates = contracts.front().dates();
    for (std::size_t c = 1; c < contracts.size(); ++c) {
        std::vector<Date> keep;
        std::set_intersection(dates.begin(), dates.end(), contracts[c].dates().begin(),
                              contracts[c].dates().end(), std::back_inserter(keep));
        dates = std::move(keep);
    }
    std::vector<LevelSeries> out;
    for (const auto& s : contracts) {
        std::vector<double> lv;
        lv.reserve(dates.size());
        for (Date d : dates) lv.push_back(s.level(*s.index_of(d)));
        out.emplace_back(dates, std::move(lv), s.label());
    }
    return out;
}

// Inverse-volatility weights scaled so the portfolio hits the target.
inline std::vector<double> equal_risk_weights(const SquareMatrix& cov, double target) {
    std::vector<double> raw(cov.dim());
    for (std::size_t i = 0; i < cov.dim(); ++i) {
        const double s = std::sqrt(std::max(cov(i, i), 0.0));
        if (!(s > 0.0)) throw NumericError("stablerisk: contract " + std::to_string(i) + " has zero variance");
        raw[i] = 1.0 / s;
    }
    const double pv = portfolio_volatility(raw, cov);
    if (!(pv > 1e-12)) throw NumericError("stablerisk: degenerate covariance (zero portfolio volatility)");
    for (double& w : raw) w *= target / pv;
    return raw;
}

}  // namespace detail

/// Whether moving a position from `current` to `target` contracts clears the
/// no-trade threshold: |target − current| ≥ threshold·|current|. Opening a
/// position from zero always trades; an unchanged position never does.
inline bool passes_threshold(double current, double target, double threshold) {
    if (target == current) return false;
    if (current == 0.0) return true;
    return std::abs(target - current) >= threshold * std::abs(current);
}

/// Constant-volatility futures portfolio with a no-trade band on position changes.
///
/// Value is kept as cash plus the marked value of the positions. At every
/// rebalance date the target quantities come from inverse-volatility weights
/// scaled so that √(xᵀΣx) equals the target; a contract is only traded when
/// |q* − q| ≥ threshold·|q|. Costs come out of cash.
inline StableRiskResult simulate_stablerisk(const std::vector<LevelSeries>& contracts,
                                            const StableRiskParams& p) {
    p.validate();
    if (contracts.size() < 2) throw InputError("stablerisk: need at least two contracts");
    const auto aligned = detail::common_dates(contracts);
    const std::size_t n = aligned.size();
    const std::size_t T = aligned.front().size();
    if (T < p.cov_window + 2) {
        throw PreconditionError("stablerisk: need at least " + std::to_string(p.cov_window + 2) +
                                " common dates, got " + std::to_string(T));
    }

    StableRiskResult res;
    res.params = p;
    res.first_rebalance = p.cov_window;
    FuturesPortfolio st;
    st.quantity.assign(n, 0.0);
    st.price.resize(n);
    st.weight.assign(n, 0.0);
    st.cash = p.base;
    st.value = p.base;
    double traded = 0.0;
    double value_sum = 0.0;

    for (std::size_t t = 0; t < T; ++t) {
        st.date = aligned.front().date(t);
        StableRiskStep step;
        if (t > 0) {
            for (std::size_t i = 0; i < n; ++i) {
                step.pnl += st.quantity[i] * (aligned[i].level(t) - aligned[i].level(t - 1));
            }
            const double yf = year_fraction(DayCount::act360, aligned.front().date(t - 1), st.date);
            step.accrual = p.cash_rate * yf * p.cash_fraction * st.value;
            st.cash += step.accrual;
        }
        for (std::size_t i = 0; i < n; ++i) st.price[i] = aligned[i].level(t);

        if (t >= p.cov_window && (t - p.cov_window) % p.rebalance_every == 0) {
            std::vector<std::vector<double>> window;
            window.reserve(p.cov_window);
            for (std::size_t s = t + 1 - p.cov_window; s <= t; ++s) {
                std::vector<double> r(n);
                for (std::size_t i = 0; i < n; ++i) r[i] = aligned[i].level(s) / aligned[i].level(s - 1) - 1.0;
                window.push_back(std::move(r));
            }
            SquareMatrix cov = sample_covariance(window);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) cov(i, j) *= p.annualization;
            const auto w = detail::equal_risk_weights(cov, p.target_vol);
            double value_now = st.cash;
            for (std::size_t i = 0; i < n; ++i) value_now += st.quantity[i] * st.price[i];
            for (std::size_t i = 0; i < n; ++i) {
                const double target_q = w[i] * value_now / st.price[i];
                const double change = target_q - st.quantity[i];
                if (!passes_threshold(st.quantity[i], target_q, p.threshold)) continue;
                const double notional = std::abs(change) * st.price[i];
                st.cash -= change * st.price[i];
                step.costs += p.cost_rate * notional;
                traded += notional;
                st.quantity[i] = target_q;
                ++step.trades;
            }
            st.cash -= step.costs;
        }
        st.value = st.cash;
        for (std::size_t i = 0; i < n; ++i) st.value += st.quantity[i] * st.price[i];
        if (!(st.value > 0.0)) {
            throw NumericError("stablerisk: portfolio value fell to " + std::to_string(st.value) +
                               " on " + st.date.iso());
        }
        for (std::size_t i = 0; i < n; ++i) st.weight[i] = st.quantity[i] * st.price[i] / st.value;
        value_sum += st.value;
        if (t > 0) res.steps.push_back(step);
        res.states.push_back(st);
    }

    // Rolling realized volatility of daily portfolio returns after the first rebalance.
    res.realized_vol.assign(T, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> rets(T, 0.0);
    for (std::size_t t = 1; t < T; ++t) rets[t] = res.states[t].value / res.states[t - 1].value - 1.0;
    for (std::size_t t = res.first_rebalance + p.realized_window; t < T; ++t) {
        const std::span<const double> win(rets.data() + t + 1 - p.realized_window, p.realized_window);
        const double rv = std::sqrt(sample_variance(win) * p.annualization);
        res.realized_vol[t] = rv;
        const double dev = std::abs(rv / p.target_vol - 1.0);
        res.max_deviation = std::max(res.max_deviation, dev);
        if (dev > p.band) ++res.band_exits;
    }
    res.turnover = traded / (value_sum / static_cast<double>(T));
    return res;
}

struct StableRiskPathSummary {
    std::uint64_t seed = 0;
    std::size_t band_exits = 0;
    double max_deviation = 0.0;
    double mean_realized_vol = 0.0;
    double turnover = 0.0;
    double final_value = 0.0;
};

struct StableRiskMonteCarlo {
    RegimeSwitchScenario scenario;
    StableRiskParams params;
    std::uint64_t master_seed = 0;
    std::vector<StableRiskPathSummary> paths;

    std::size_t paths_with_exit() const {
        return static_cast<std::size_t>(std::count_if(paths.begin(), paths.end(),
                                                      [](const auto& s) { return s.band_exits > 0; }));
    }
};

inline StableRiskPathSummary run_stablerisk_path(const RegimeSwitchScenario& sc,
                                                 const StableRiskParams& p, std::uint64_t seed) {
    Rng rng(seed);
    const auto contracts = simulate_regime_switch(sc, rng);
    const auto res = simulate_stablerisk(contracts, p);
    StableRiskPathSummary s;
    s.seed = seed;
    s.band_exits = res.band_exits;
    s.max_deviation = res.max_deviation;
    s.turnover = res.turnover;
    s.final_value = res.states.back().value;
    double sum = 0.0;
    std::size_t cnt = 0;
    for (double v : res.realized_vol) {
        if (!std::isnan(v)) {
            sum += v;
            ++cnt;
        }
    }
    s.mean_realized_vol = cnt ? sum / static_cast<double>(cnt) : 0.0;
    return s;
}

/// Path k uses seed derive_seed(master_seed, k); results do not depend on `threads`.
inline StableRiskMonteCarlo run_stablerisk_monte_carlo(const RegimeSwitchScenario& sc,
                                                       const StableRiskParams& p, std::size_t paths,
                                                       std::uint64_t master_seed,
                                                       unsigned threads = 0) {
    sc.validate();
    p.validate();
    StableRiskMonteCarlo mc;
    mc.scenario = sc;
    mc.params = p;
    mc.master_seed = master_seed;
    mc.paths.resize(paths);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(paths, 1)));
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < paths; k += threads) {
                    mc.paths[k] = run_stablerisk_path(sc, p, derive_seed(master_seed, k));
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return mc;
}

}  // namespace riskindexlab
