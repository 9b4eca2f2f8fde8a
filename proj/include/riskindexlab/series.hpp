#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskindexlab/date.hpp"
#include "riskindexlab/errors.hpp"

namespace riskindexlab {

namespace detail {

inline void require_strictly_increasing(const std::vector<Date>& dates, const std::string& what) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i])) {
            throw InputError(what + ": dates must be strictly increasing (" + dates[i - 1].iso() +
                             " then " + dates[i].iso() + ")");
        }
    }
}

}  // namespace detail

/// Dated sequence of strictly positive index or price levels.
///
/// Immutable once built; the constructor enforces the invariants so every
/// downstream estimator can take logs and ratios without re-checking.
class LevelSeries {
public:
    LevelSeries() = default;

    LevelSeries(std::vector<Date> dates, std::vector<double> levels, std::string label = {})
        : dates_(std::move(dates)), levels_(std::move(levels)), label_(std::move(label)) {
        if (dates_.size() != levels_.size()) {
            throw InputError("level series '" + label_ + "': " + std::to_string(dates_.size()) +
                             " dates but " + std::to_string(levels_.size()) + " levels");
        }
        detail::require_strictly_increasing(dates_, "level series '" + label_ + "'");
        for (std::size_t i = 0; i < levels_.size(); ++i) {
            if (!std::isfinite(levels_[i]) || levels_[i] <= 0.0) {
                throw InputError("level series '" + label_ + "': level at " + dates_[i].iso() +
                                 " must be finite and > 0");
            }
        }
    }

    std::size_t size() const { return levels_.size(); }
    bool empty() const { return levels_.empty(); }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& levels() const { return levels_; }
    const std::string& label() const { return label_; }

    Date date(std::size_t i) const { return dates_.at(i); }
    double level(std::size_t i) const { return levels_.at(i); }

    std::optional<std::size_t> index_of(Date d) const {
        auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
        if (it == dates_.end() || *it != d) return std::nullopt;
        return static_cast<std::size_t>(it - dates_.begin());
    }

    friend bool operator==(const LevelSeries&, const LevelSeries&) = default;

private:
    std::vector<Date> dates_;
    std::vector<double> levels_;
    std::string label_;
};

/// Dated real values with no sign restriction (interest-rate fixings, p.a. decimals).
class DatedSeries {
public:
    DatedSeries() = default;

    DatedSeries(std::vector<Date> dates, std::vector<double> values, std::string label = {})
        : dates_(std::move(dates)), values_(std::move(values)), label_(std::move(label)) {
        if (dates_.size() != values_.size()) {
            throw InputError("series '" + label_ + "': date/value length mismatch");
        }
        detail::require_strictly_increasing(dates_, "series '" + label_ + "'");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw InputError("series '" + label_ + "': non-finite value at " + dates_[i].iso());
            }
        }
    }

    // Constant value on every supplied date.
    static DatedSeries flat(const std::vector<Date>& dates, double value, std::string label = {}) {
        return DatedSeries(dates, std::vector<double>(dates.size(), value), std::move(label));
    }

    std::size_t size() const { return values_.size(); }
    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& label() const { return label_; }

    std::optional<double> find(Date d) const {
        auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
        if (it == dates_.end() || *it != d) return std::nullopt;
        return values_[static_cast<std::size_t>(it - dates_.begin())];
    }

    // Value fixed on `d`; throws PreconditionError naming the date when absent.
    double at(Date d) const {
        if (auto v = find(d)) return *v;
        throw PreconditionError("missing " + (label_.empty() ? std::string("value") : label_) +
                                " for date " + d.iso());
    }

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    std::string label_;
};

enum class ReturnKind { simple, log };

inline const char* to_string(ReturnKind k) { return k == ReturnKind::simple ? "simple" : "log"; }

/// Horizon-n returns of a level series. dates[k] is the end date of return k.
struct ReturnSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    ReturnKind kind = ReturnKind::simple;
    std::size_t horizon = 1;

    std::size_t size() const { return values.size(); }
    std::span<const double> view() const { return values; }
};

/// value_t = B_t / B_{t-n} - 1 (simple) or ln(B_t / B_{t-n}) (log).
inline ReturnSeries to_returns(const LevelSeries& series, ReturnKind kind, std::size_t n = 1) {
    if (n < 1) throw InputError("return horizon must be >= 1");
    if (n >= series.size()) {
        throw InputError("return horizon " + std::to_string(n) + " needs more than " +
                         std::to_string(n) + " levels, series has " +
                         std::to_string(series.size()));
    }
    ReturnSeries out;
    out.kind = kind;
    out.horizon = n;
    const auto& lv = series.levels();
    out.dates.reserve(lv.size() - n);
    out.values.reserve(lv.size() - n);
    for (std::size_t t = n; t < lv.size(); ++t) {
        const double ratio = lv[t] / lv[t - n];
        out.dates.push_back(series.date(t));
        out.values.push_back(kind == ReturnKind::simple ? ratio - 1.0 : std::log(ratio));
    }
    return out;
}

enum class DayCount { act360, act365 };

inline const char* to_string(DayCount dc) { return dc == DayCount::act360 ? "ACT/360" : "ACT/365"; }

inline double day_count_denominator(DayCount dc) { return dc == DayCount::act360 ? 360.0 : 365.0; }

inline double year_fraction(DayCount dc, Date d1, Date d2) {
    const long days = days_between(d1, d2);
    if (days < 0) {
        throw InputError("year_fraction: end date " + d2.iso() + " precedes start " + d1.iso());
    }
    return static_cast<double>(days) / day_count_denominator(dc);
}

// Weekday calendar starting at `start` (rolled forward off weekends).
inline std::vector<Date> business_days(Date start, std::size_t count) {
    std::vector<Date> out;
    out.reserve(count);
    Date d = start;
    while (out.size() < count) {
        const std::chrono::weekday wd{d.sys_days()};
        if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.push_back(d);
        d = d.plus_days(1);
    }
    return out;
}

// First calendar day of `count` consecutive months starting at `start`'s month.
inline std::vector<Date> month_starts(Date start, std::size_t count) {
    std::vector<Date> out;
    out.reserve(count);
    std::chrono::year_month ym{std::chrono::year_month_day{start.sys_days()}.year(),
                               std::chrono::year_month_day{start.sys_days()}.month()};
    for (std::size_t i = 0; i < count; ++i) {
        out.emplace_back(std::chrono::sys_days{ym / std::chrono::day{1}});
        ym += std::chrono::months{1};
    }
    return out;
}

}  // namespace riskindexlab
