#pragma once

// JSON and CSV renderings of engine and diagnostic results. Requires
// nlohmann/json on the include path.

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>

#include <json.hpp>

#include "riskindexlab/config.hpp"
#include "riskindexlab/csv.hpp"
#include "riskindexlab/diagnostics/bias.hpp"
#include "riskindexlab/diagnostics/compound.hpp"
#include "riskindexlab/diagnostics/leakage.hpp"
#include "riskindexlab/diagnostics/sensitivity.hpp"
#include "riskindexlab/engines/djrri.hpp"
#include "riskindexlab/engines/risk_control.hpp"
#include "riskindexlab/engines/stablerisk.hpp"
#include "riskindexlab/moments.hpp"

namespace riskindexlab {

using Json = nlohmann::ordered_json;

inline Json to_json(const VolRecipe& r) {
    return {{"method", to_string(r.method)},  {"lambda_long", r.lambda_long},
            {"lambda_short", r.lambda_short}, {"n", r.horizon},
            {"window", r.window},             {"annualization", r.annualization}};
}

inline Json to_json(const VolEstimate& v) {
    return {{"value", v.value},
            {"variance", v.variance},
            {"method", to_string(v.method)},
            {"as_of", v.as_of.iso()},
            {"recipe", to_json(v.recipe)}};
}

inline Json to_json(const LeverageParams& p) {
    return {{"tv", p.target_vol}, {"cap", p.cap}, {"floor", p.floor}, {"lag", p.lag}};
}

inline Json to_json(const RiskControlSeries& s) {
    Json j;
    j["engine"] = to_string(s.engine);
    j["params"] = to_json(s.params);
    j["rebalance_every"] = s.options.rebalance_every;
    j["base"] = s.options.base;
    j["day_count"] = s.options.day_count ? to_string(*s.options.day_count) : "default";
    if (s.engine == Engine::sprci) j["accrual"] = to_string(s.options.accrual);
    j["vol_recipe"] = to_json(s.vol_recipe);
    Json sched = Json::array();
    for (std::size_t k = 0; k < s.schedule.size(); ++k) {
        sched.push_back({{"rebalance_date", s.schedule.rebalance_dates[k].iso()},
                         {"rv_date", s.schedule.rv_dates[k].iso()},
                         {"rv", s.schedule.rv[k]},
                         {"lf", s.schedule.lf[k]}});
    }
    j["schedule"] = std::move(sched);
    Json steps = Json::array();
    for (std::size_t k = 0; k < s.risky.size(); ++k) {
        steps.push_back({{"date", s.dates[k + 1].iso()},
                         {"lf", s.exposure[k]},
                         {"risky", s.risky[k]},
                         {"cash", s.cash[k]},
                         {"level", s.levels[k + 1]}});
    }
    j["steps"] = std::move(steps);
    return j;
}

inline Json to_json(const CmacAllocation& a) {
    return {{"date", a.date.iso()},
            {"weights", {a.weights[0], a.weights[1], a.weights[2]}},
            {"expected_returns", {a.expected_returns[0], a.expected_returns[1], a.expected_returns[2]}},
            {"risk_fraction", a.risk_fraction},
            {"stock_risk", a.stock_risk},
            {"target_risk", a.target_risk},
            {"achieved_risk", a.achieved_risk},
            {"target_attainable", a.target_attainable}};
}

inline Json to_json(const DjrriResult& r) {
    Json j;
    j["engine"] = "djrri";
    j["risk_fraction"] = r.options.risk_fraction;
    j["lookback"] = r.options.lookback;
    j["grid"] = r.options.grid;
    j["min_weight"] = r.options.min_weight;
    j["measure"] = to_string(r.options.measure);
    Json allocs = Json::array();
    for (const auto& a : r.allocations) allocs.push_back(to_json(a));
    j["allocations"] = std::move(allocs);
    return j;
}

inline Json to_json(const StableRiskParams& p) {
    return {{"tv", p.target_vol},           {"threshold", p.threshold},
            {"cost", p.cost_rate},          {"cov_window", p.cov_window},
            {"rebalance_every", p.rebalance_every}, {"cash_rate", p.cash_rate},
            {"cash_fraction", p.cash_fraction},     {"base", p.base},
            {"realized_window", p.realized_window}, {"band", p.band}};
}

inline Json to_json(const StableRiskResult& r) {
    Json j;
    j["engine"] = "stablerisk";
    j["params"] = to_json(r.params);
    j["band_exits"] = r.band_exits;
    j["max_deviation"] = r.max_deviation;
    j["turnover"] = r.turnover;
    Json states = Json::array();
    for (std::size_t t = 0; t < r.states.size(); ++t) {
        const auto& s = r.states[t];
        Json row{{"date", s.date.iso()}, {"value", s.value}, {"cash", s.cash},
                 {"quantity", s.quantity}, {"weight", s.weight}};
        if (t > 0) {
            const auto& st = r.steps[t - 1];
            row["pnl"] = st.pnl;
            row["accrual"] = st.accrual;
            row["costs"] = st.costs;
            row["trades"] = st.trades;
        }
        if (!std::isnan(r.realized_vol[t])) row["realized_vol"] = r.realized_vol[t];
        states.push_back(std::move(row));
    }
    j["states"] = std::move(states);
    return j;
}

inline Json to_json(const LeakageReport& r) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"lag", p.lag}, {"realized_vol", p.realized_vol}, {"leakage", p.leakage}});
    }
    return {{"params", to_json(r.config.params)},
            {"vol_recipe", to_json(r.config.recipe)},
            {"eval_start", r.eval_start.iso()},
            {"underlying_vol", r.underlying_vol},
            {"pass_through", r.pass_through},
            {"non_decreasing", r.non_decreasing},
            {"points", std::move(pts)}};
}

inline Json to_json(const StationarityReport& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
        steps.push_back({{"eta", s.eta},
                         {"dmean", s.dmean},
                         {"dvariance", s.dvariance},
                         {"dstddev", s.dstddev},
                         {"mean_violated", s.mean_violated},
                         {"variance_violated", s.variance_violated},
                         {"stddev_violated", s.stddev_violated}});
    }
    return {{"window", r.window},       {"tolerance", r.tolerance},
            {"mean_ok", r.mean_ok},     {"variance_ok", r.variance_ok},
            {"stddev_ok", r.stddev_ok}, {"steps", std::move(steps)}};
}

/// Metadata header shared by every artifact: command, seed, effective config
/// and its fingerprint.
inline Json artifact_metadata(const std::string& command, std::uint64_t seed, const ConfigMap& cfg,
                              const std::string& version) {
    Json c = Json::object();
    for (const auto& [k, v] : cfg) c[k] = v;
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx",
                  static_cast<unsigned long long>(fnv1a(serialize_config(cfg))));
    return {{"command", command}, {"version", version}, {"seed", seed},
            {"config_digest", digest}, {"config", std::move(c)}};
}

// ---------------------------------------------------------------------------
// CSV tables
// ---------------------------------------------------------------------------

inline void write_sensitivity_csv(std::ostream& os, const SensitivityTable<double>& t) {
    os << "tv_pct,rv_pct,delta_rv_pct,lf_pct,delta_lf_pp\n";
    for (const auto& r : t) {
        os << format_double(100.0 * r.tv) << ',' << format_double(100.0 * r.rv) << ','
           << format_double(100.0 * r.delta_rv) << ',' << format_double(100.0 * r.lf) << ','
           << format_double(100.0 * r.delta_lf) << '\n';
    }
}

inline void write_compound_csv(std::ostream& os, const CompoundTable& t) {
    os << "row,compounded_pct,compounded_diff_pp,row_stddev_pct,row_stddev_diff_pp\n";
    for (std::size_t r = 0; r < t.rows(); ++r) {
        os << 'R' << r + 1 << ',' << format_double(100.0 * t.compounded[r]) << ','
           << format_double(100.0 * t.compounded_diff[r]) << ','
           << format_double(100.0 * t.row_stddev[r]) << ','
           << format_double(100.0 * t.row_stddev_diff[r]) << '\n';
    }
}

inline void write_noise_csv(std::ostream& os, const NoiseSeries& n) {
    os << "date,noise\n";
    for (std::size_t i = 0; i < n.values.size(); ++i) {
        os << n.dates[i].iso() << ',' << format_double(n.values[i]) << '\n';
    }
}

inline void write_bias_csv(std::ostream& os, const BiasSeries& b) {
    os << "date,index,market,bias,increment\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
        os << b.dates[i].iso() << ',' << format_double(b.index[i]) << ','
           << format_double(b.market[i]) << ',' << format_double(b.bias[i]) << ','
           << (i == 0 ? std::string() : format_double(b.increments[i - 1])) << '\n';
    }
}

inline void write_leakage_csv(std::ostream& os, const LeakageReport& r) {
    os << "lag,realized_vol,leakage\n";
    for (const auto& p : r.points) {
        os << p.lag << ',' << format_double(p.realized_vol) << ',' << format_double(p.leakage) << '\n';
    }
}

}  // namespace riskindexlab
