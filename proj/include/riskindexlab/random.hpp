#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "riskindexlab/errors.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Independent stream seed for (master seed, stream index).
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

/// mt19937_64 with a portable uniform/normal transform, so a seed gives the
/// same draws on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on (0, 1), 53-bit resolution.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Synthetic business-day price paths whose volatility switches once.
struct RegimeSwitchScenario {
    std::size_t assets = 1;
    std::size_t days = 756;
    std::size_t switch_day = 378;  // first day of the second regime
    double vol_before = 0.10;      // annualized
    double vol_after = 0.40;
    double drift = 0.0;            // annualized
    double correlation = 0.0;      // common pairwise correlation of shocks
    double start_level = 100.0;
    Date start_date{2010, 1, 4};

    void validate() const {
        if (assets < 1) throw InputError("scenario needs at least one asset");
        if (days < 2) throw InputError("scenario needs at least two days");
        if (!(vol_before >= 0.0 && vol_after >= 0.0)) throw InputError("volatility must be >= 0");
        if (!(correlation >= 0.0 && correlation <= 1.0)) {
            throw InputError("scenario correlation must lie in [0,1]");
        }
        if (!(start_level > 0.0)) throw InputError("start level must be > 0");
    }
};

/// One path per asset; log-normal daily steps with a one-factor shock structure.
inline std::vector<LevelSeries> simulate_regime_switch(const RegimeSwitchScenario& sc, Rng& rng) {
    sc.validate();
    const auto dates = business_days(sc.start_date, sc.days);
    std::vector<std::vector<double>> levels(sc.assets, std::vector<double>(sc.days));
    for (auto& l : levels) l[0] = sc.start_level;
    const double dt = 1.0 / 252.0;
    const double load = std::sqrt(sc.correlation);
    const double idio = std::sqrt(1.0 - sc.correlation);
    for (std::size_t t = 1; t < sc.days; ++t) {
        const double vol = t < sc.switch_day ? sc.vol_before : sc.vol_after;
        const double common = rng.normal();
        for (std::size_t a = 0; a < sc.assets; ++a) {
            const double z = load * common + idio * rng.normal();
            const double step = (sc.drift - 0.5 * vol * vol) * dt + vol * std::sqrt(dt) * z;
            levels[a][t] = levels[a][t - 1] * std::exp(step);
        }
    }
    std::vector<LevelSeries> out;
    out.reserve(sc.assets);
    for (std::size_t a = 0; a < sc.assets; ++a) {
        out.emplace_back(dates, std::move(levels[a]), "asset" + std::to_string(a));
    }
    return out;
}

}  // namespace riskindexlab
