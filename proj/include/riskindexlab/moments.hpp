#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskindexlab/errors.hpp"
#include "riskindexlab/series.hpp"

namespace riskindexlab {

// ---------------------------------------------------------------------------
// Sample moments. All dispersion estimators use the population divisor η.
// ---------------------------------------------------------------------------

namespace detail {

inline void require_nonempty(std::span<const double> xs, const char* what) {
    if (xs.empty()) throw InputError(std::string(what) + ": empty input");
}

}  // namespace detail

inline double mean(std::span<const double> xs) {
    detail::require_nonempty(xs, "mean");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Σ(x − μ)² / η
inline double sample_variance(std::span<const double> xs) {
    detail::require_nonempty(xs, "sample_variance");
    const double mu = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - mu) * (x - mu);
    return s / static_cast<double>(xs.size());
}

/// Σ min(x − μ, 0)² / η
inline double semivariance(std::span<const double> xs) {
    detail::require_nonempty(xs, "semivariance");
    const double mu = mean(xs);
    double s = 0.0;
    for (double x : xs) {
        const double d = std::min(x - mu, 0.0);
        s += d * d;
    }
    return s / static_cast<double>(xs.size());
}

inline double covariance(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw InputError("covariance: length mismatch (" + std::to_string(xs.size()) + " vs " +
                         std::to_string(ys.size()) + ")");
    }
    detail::require_nonempty(xs, "covariance");
    const double mx = mean(xs);
    const double my = mean(ys);
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
    return s / static_cast<double>(xs.size());
}

inline double correlation(std::span<const double> xs, std::span<const double> ys) {
    const double cov = covariance(xs, ys);
    const double sx = std::sqrt(sample_variance(xs));
    const double sy = std::sqrt(sample_variance(ys));
    if (sx == 0.0 || sy == 0.0) throw NumericError("correlation: zero standard deviation");
    return std::clamp(cov / (sx * sy), -1.0, 1.0);
}

struct MomentSet {
    double mean = 0.0;
    double variance = 0.0;
    double semivariance = 0.0;
    double stddev = 0.0;
    double skewness = std::numeric_limits<double>::quiet_NaN();  // NaN when σ = 0
    double kurtosis = std::numeric_limits<double>::quiet_NaN();  // non-excess
    std::size_t count = 0;
};

inline MomentSet moments(std::span<const double> xs) {
    detail::require_nonempty(xs, "moments");
    MomentSet m;
    m.count = xs.size();
    m.mean = mean(xs);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, sv = 0.0;
    for (double x : xs) {
        const double d = x - m.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
        if (d < 0.0) sv += d2;
    }
    const double eta = static_cast<double>(xs.size());
    m.variance = m2 / eta;
    m.semivariance = sv / eta;
    m.stddev = std::sqrt(m.variance);
    if (m.stddev > 0.0) {
        m.skewness = (m3 / eta) / (m.variance * m.stddev);
        m.kurtosis = (m4 / eta) / (m.variance * m.variance);
    }
    return m;
}

// ---------------------------------------------------------------------------
// Exponentially weighted variance of n-day log returns.
// ---------------------------------------------------------------------------

struct EwmaParams {
    double lambda = 0.94;
    std::size_t horizon = 1;       // n: days per return
    std::size_t window = 252;      // N: observations used to seed the recursion
    double annualization = 252.0;

    void validate() const {
        if (!(lambda > 0.0 && lambda < 1.0)) {
            throw InputError("EWMA decay factor must lie in (0,1), got " + std::to_string(lambda));
        }
        if (horizon < 1) throw InputError("EWMA return horizon must be >= 1");
        if (window < 2) throw InputError("EWMA initialization window must be >= 2");
        if (!(annualization > 0.0)) throw InputError("annualization factor must be > 0");
    }
};

/// Normalized seed weights for `count` observations, oldest first.
/// Raw weight (1−λ)·λ^k where k is the distance from the most recent observation.
inline std::vector<double> ewma_weights(std::size_t count, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw InputError("EWMA decay factor must lie in (0,1)");
    }
    std::vector<double> w(count);
    double total = 0.0;
    double p = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
        w[count - 1 - k] = (1.0 - lambda) * p;
        total += w[count - 1 - k];
        p *= lambda;
    }
    for (double& x : w) x /= total;
    return w;
}

/// Seed variance as of the last element of `log_returns`, using its trailing
/// `p.window` entries. Squared returns are not demeaned.
inline double ewma_variance_init(std::span<const double> log_returns, const EwmaParams& p) {
    p.validate();
    if (log_returns.size() < p.window) {
        throw InputError("EWMA initialization needs " + std::to_string(p.window) +
                         " returns, got " + std::to_string(log_returns.size()));
    }
    const auto tail = log_returns.subspan(log_returns.size() - p.window);
    const auto w = ewma_weights(tail.size(), p.lambda);
    double v = 0.0;
    for (std::size_t i = 0; i < tail.size(); ++i) v += w[i] * tail[i] * tail[i];
    return v;
}

inline double ewma_variance_init(const ReturnSeries& returns, const EwmaParams& p) {
    if (returns.kind != ReturnKind::log) {
        throw InputError("EWMA initialization expects log returns");
    }
    return ewma_variance_init(returns.view(), p);
}

/// λ·prev + (1−λ)·r²
inline double ewma_variance_update(double prev, double log_return, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw InputError("EWMA decay factor must lie in (0,1), got " + std::to_string(lambda));
    }
    if (!(prev >= 0.0)) throw InputError("EWMA previous variance must be >= 0");
    return lambda * prev + (1.0 - lambda) * log_return * log_return;
}

/// √((factor/n)·variance), factor 252 by default.
inline double annualize(double variance, std::size_t horizon = 1, double factor = 252.0) {
    if (!(variance >= 0.0)) throw NumericError("annualize: negative variance");
    if (horizon < 1) throw InputError("annualize: horizon must be >= 1");
    return std::sqrt((factor / static_cast<double>(horizon)) * variance);
}

// ---------------------------------------------------------------------------
// Realized volatility recipes used by the index engines.
// ---------------------------------------------------------------------------

enum class VolMethod { sample, ewma_long, ewma_short };

inline const char* to_string(VolMethod m) {
    switch (m) {
        case VolMethod::sample: return "sample";
        case VolMethod::ewma_long: return "ewma-long";
        case VolMethod::ewma_short: return "ewma-short";
    }
    return "?";
}

inline VolMethod parse_vol_method(const std::string& s) {
    if (s == "sample") return VolMethod::sample;
    if (s == "ewma-long") return VolMethod::ewma_long;
    if (s == "ewma-short") return VolMethod::ewma_short;
    throw InputError("unknown volatility method '" + s + "' (sample|ewma-long|ewma-short)");
}

struct VolRecipe {
    VolMethod method = VolMethod::ewma_short;
    double lambda_long = 0.97;
    double lambda_short = 0.94;
    std::size_t horizon = 1;
    std::size_t window = 252;
    double annualization = 252.0;

    EwmaParams ewma() const {
        return {method == VolMethod::ewma_long ? lambda_long : lambda_short, horizon, window,
                annualization};
    }
};

struct VolEstimate {
    double value = 0.0;     // annualized
    double variance = 0.0;  // per-horizon, not annualized
    VolMethod method = VolMethod::sample;
    VolRecipe recipe;
    Date as_of;
};

/// Realized volatility for every level date; NaN before enough history exists.
struct VolTrack {
    std::vector<Date> dates;
    std::vector<double> variance;
    std::vector<double> vol;
    std::size_t first_valid = 0;
    VolRecipe recipe;

    std::size_t size() const { return vol.size(); }
    bool available(std::size_t i) const { return i < vol.size() && i >= first_valid; }

    VolEstimate at(std::size_t i) const {
        if (!available(i)) {
            throw PreconditionError("no realized volatility available at index " +
                                    std::to_string(i));
        }
        return {vol[i], variance[i], recipe.method, recipe, dates[i]};
    }

    // A track with a fixed RV on every date (for pinned-exposure runs).
    static VolTrack constant(const std::vector<Date>& dates, double rv) {
        VolTrack t;
        t.dates = dates;
        t.vol.assign(dates.size(), rv);
        t.variance.assign(dates.size(), rv * rv / 252.0);
        return t;
    }
};

inline VolTrack realized_vol_track(const LevelSeries& levels, const VolRecipe& recipe) {
    const std::size_t n = recipe.horizon;
    const std::size_t N = recipe.window;
    if (n < 1 || N < 2) throw InputError("volatility recipe needs horizon >= 1 and window >= 2");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    VolTrack t;
    t.recipe = recipe;
    t.dates = levels.dates();
    t.variance.assign(levels.size(), nan);
    t.vol.assign(levels.size(), nan);
    t.first_valid = n + N - 1;
    if (levels.size() <= t.first_valid) {
        t.first_valid = levels.size();
        return t;
    }
    const auto& lv = levels.levels();
    std::vector<double> r(levels.size(), 0.0);  // r[i] = ln(B_i / B_{i-n}) for i >= n
    for (std::size_t i = n; i < lv.size(); ++i) r[i] = std::log(lv[i] / lv[i - n]);
    const std::span<const double> rs(r);

    if (recipe.method == VolMethod::sample) {
        for (std::size_t i = t.first_valid; i < lv.size(); ++i) {
            t.variance[i] = sample_variance(rs.subspan(i + 1 - N, N));
            t.vol[i] = annualize(t.variance[i], n, recipe.annualization);
        }
        return t;
    }
    const EwmaParams p = recipe.ewma();
    p.validate();
    const std::size_t T = t.first_valid;
    t.variance[T] = ewma_variance_init(rs.subspan(n, N), p);
    t.vol[T] = annualize(t.variance[T], n, p.annualization);
    for (std::size_t i = T + 1; i < lv.size(); ++i) {
        t.variance[i] = ewma_variance_update(t.variance[i - 1], r[i], p.lambda);
        t.vol[i] = annualize(t.variance[i], n, p.annualization);
    }
    return t;
}

inline VolEstimate latest_vol(const LevelSeries& levels, const VolRecipe& recipe) {
    const auto track = realized_vol_track(levels, recipe);
    if (track.first_valid >= track.size()) {
        throw PreconditionError("need at least " + std::to_string(recipe.horizon + recipe.window) +
                                " levels for the volatility recipe, got " +
                                std::to_string(levels.size()));
    }
    return track.at(track.size() - 1);
}

// ---------------------------------------------------------------------------
// Stationarity diagnostic: finite differences of moments with respect to the
// sample size η, over expanding samples η = w, 2w, 3w, ...
// ---------------------------------------------------------------------------

struct StationarityStep {
    std::size_t eta = 0;       // sample size before the step
    double dmean = 0.0;        // Δμ/Δη
    double dvariance = 0.0;    // ΔV/Δη
    double dstddev = 0.0;      // Δσ/Δη
    double rel_mean = 0.0;     // |Δμ| / |μ|
    double rel_variance = 0.0;
    double rel_stddev = 0.0;
    bool mean_violated = false;
    bool variance_violated = false;
    bool stddev_violated = false;
};

struct StationarityReport {
    std::size_t window = 0;
    double tolerance = 0.10;
    std::vector<StationarityStep> steps;
    bool mean_ok = true;
    bool variance_ok = true;
    bool stddev_ok = true;

    bool stationary() const { return mean_ok && variance_ok && stddev_ok; }
};

namespace detail {

// Relative change, with an absolute fallback when the base is ~0.
inline double relative_change(double before, double after) {
    constexpr double tiny = 1e-12;
    const double delta = std::abs(after - before);
    if (std::abs(before) < tiny) return delta < tiny ? 0.0 : std::numeric_limits<double>::infinity();
    return delta / std::abs(before);
}

}  // namespace detail

inline StationarityReport stationarity_diagnostic(std::span<const double> xs, std::size_t window,
                                                  double tolerance = 0.10) {
    if (window < 1) throw InputError("stationarity_diagnostic: window must be >= 1");
    if (xs.size() < 2 * window) {
        throw InputError("stationarity_diagnostic: need at least " + std::to_string(2 * window) +
                         " observations, got " + std::to_string(xs.size()));
    }
    if (!(tolerance >= 0.0)) throw InputError("stationarity_diagnostic: tolerance must be >= 0");
    StationarityReport rep;
    rep.window = window;
    rep.tolerance = tolerance;
    const double w = static_cast<double>(window);
    MomentSet prev = moments(xs.first(window));
    for (std::size_t eta = window; eta + window <= xs.size(); eta += window) {
        const MomentSet next = moments(xs.first(eta + window));
        StationarityStep s;
        s.eta = eta;
        s.dmean = (next.mean - prev.mean) / w;
        s.dvariance = (next.variance - prev.variance) / w;
        s.dstddev = (next.stddev - prev.stddev) / w;
        s.rel_mean = detail::relative_change(prev.mean, next.mean);
        s.rel_variance = detail::relative_change(prev.variance, next.variance);
        s.rel_stddev = detail::relative_change(prev.stddev, next.stddev);
        s.mean_violated = s.rel_mean > tolerance;
        s.variance_violated = s.rel_variance > tolerance;
        s.stddev_violated = s.rel_stddev > tolerance;
        rep.mean_ok = rep.mean_ok && !s.mean_violated;
        rep.variance_ok = rep.variance_ok && !s.variance_violated;
        rep.stddev_ok = rep.stddev_ok && !s.stddev_violated;
        rep.steps.push_back(s);
        prev = next;
    }
    return rep;
}

}  // namespace riskindexlab
