#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "riskindexlab/engines/leverage.hpp"
#include "riskindexlab/errors.hpp"
#include "riskindexlab/moments.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

enum class Engine { hsrai, sprci };

inline const char* to_string(Engine e) { return e == Engine::hsrai ? "hsrai" : "sprci"; }

enum class Accrual { simple_rate, roll_3m };

inline const char* to_string(Accrual a) { return a == Accrual::simple_rate ? "simple-rate" : "roll-3m"; }

inline Accrual parse_accrual(const std::string& s) {
    if (s == "simple-rate") return Accrual::simple_rate;
    if (s == "roll-3m") return Accrual::roll_3m;
    throw InputError("unknown accrual '" + s + "' (simple-rate|roll-3m)");
}

struct RiskControlOptions {
    std::size_t rebalance_every = 1;  // observations between rebalance dates
    double base = 100.0;
    std::optional<DayCount> day_count;      // engine default when unset (HSRAI ACT/365, SPRCI ACT/360)
    Accrual accrual = Accrual::simple_rate;  // SPRCI only
    std::size_t roll_days = 30;              // SPRCI roll-3m interpolation period

    void validate() const {
        if (rebalance_every < 1) throw InputError("rebalance interval must be >= 1");
        if (!(base > 0.0)) throw InputError("base level must be > 0");
        if (roll_days < 1) throw InputError("roll period must be >= 1 day");
    }
};

/// Computed index levels with a per-step split into risky and cash legs.
///
/// risky[k] and cash[k] describe the step ending at dates[k + 1]; their sum is
/// levels[k + 1] / levels[k] − 1.
struct RiskControlSeries {
    Engine engine = Engine::hsrai;
    LeverageParams params;
    RiskControlOptions options;
    VolRecipe vol_recipe;

    std::vector<Date> dates;
    std::vector<double> levels;
    std::vector<double> exposure;  // LF in force over each step
    std::vector<double> risky;
    std::vector<double> cash;
    LeverageSchedule schedule;

    std::size_t size() const { return levels.size(); }

    LevelSeries as_levels(std::string label = {}) const {
        return LevelSeries(dates, levels, label.empty() ? std::string(to_string(engine)) : label);
    }
};

namespace detail {

// Exposure from an RV reading. A zero reading is the limit TV/RV → ∞, i.e. the cap.
inline double exposure_from_rv(Engine engine, const LeverageParams& p, double rv, Date when) {
    if (std::isnan(rv) || rv < 0.0) {
        throw PreconditionError("no usable realized volatility on " + when.iso());
    }
    if (rv == 0.0) return p.cap;
    return engine == Engine::hsrai ? leverage_hsrai(p, rv) : leverage_sprci(p.target_vol, p.cap, rv);
}

inline void require_positive_level(const char* engine, double level, Date when) {
    if (!(level > 0.0)) {
        throw NumericError(std::string(engine) + ": index level fell to " + std::to_string(level) +
                           " on " + when.iso());
    }
}

inline void require_aligned(const LevelSeries& underlying, const VolTrack& rv) {
    if (rv.dates != underlying.dates()) {
        throw InputError("volatility track dates do not match the underlying series");
    }
}

}  // namespace detail

}  // namespace riskindexlab
